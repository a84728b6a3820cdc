import { renderTraceLines, renderTraceTable } from "./table.js";
import type { AppState } from "./state.js";
import type { Catalog, GradeReport, ReplayCursor } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function button(label: string, className: string, onClick: () => void): HTMLButtonElement {
  const b = el("button", className, label);
  b.type = "button";
  b.addEventListener("click", onClick);
  return b;
}

function sourcePane(lines: string[], currentLine?: number | null): HTMLElement {
  const pane = el("div", "source-pane");
  lines.forEach((text, i) => {
    const line = el("div", "src-line");
    line.dataset.line = String(i + 1);
    line.appendChild(el("span", "src-num", String(i + 1)));
    line.appendChild(el("span", "src-text", text));
    if (i + 1 === currentLine) line.classList.add("current");
    pane.appendChild(line);
  });
  return pane;
}

function outputPane(lines: string[]): HTMLElement {
  const pane = el("div", "output-pane");
  pane.appendChild(el("h3", "", "Program output"));
  for (const text of lines) pane.appendChild(el("div", "out-line", text));
  return pane;
}

// ---------------------------------------------------------------------------
// Home
// ---------------------------------------------------------------------------

export interface HomeHandlers {
  onStart: (learner: string, exerciseId: string) => void;
  onOrderingTest: (learner: string, exerciseId: string) => void;
}

export function renderHome(catalog: Catalog, learner: string, handlers: HomeHandlers): HTMLElement {
  const screen = el("section", "screen screen-home");
  screen.appendChild(el("h1", "", "Trace Tutor"));

  const nameLabel = el("label", "name-label", "Your name: ");
  const nameInput = el("input", "name-input");
  nameInput.type = "text";
  nameInput.value = learner;
  nameInput.placeholder = "enter your name";
  nameLabel.appendChild(nameInput);
  screen.appendChild(nameLabel);

  const list = el("ul", "exercise-list");
  const buttons: HTMLButtonElement[] = [];
  for (const entry of catalog.exercises) {
    const item = el("li", "exercise-item");
    item.appendChild(el("span", "exercise-title", entry.title));
    const start = button("Start exercise", "btn-start", () =>
      handlers.onStart(nameInput.value.trim(), entry.id),
    );
    start.dataset.exercise = entry.id;
    const ordering = button("Ordering test", "btn-ordering", () =>
      handlers.onOrderingTest(nameInput.value.trim(), entry.id),
    );
    ordering.dataset.exercise = entry.id;
    buttons.push(start, ordering);
    item.appendChild(start);
    item.appendChild(ordering);
    list.appendChild(item);
  }
  screen.appendChild(list);

  const refresh = () => {
    const blank = nameInput.value.trim() === "";
    for (const b of buttons) b.disabled = blank;
  };
  nameInput.addEventListener("input", refresh);
  refresh();
  return screen;
}

// ---------------------------------------------------------------------------
// Trace selection question
// ---------------------------------------------------------------------------

export interface SelectionHandlers {
  onPick: (index: number) => void;
  onConfirm: () => void;
}

export function renderSelection(state: AppState, handlers: SelectionHandlers): HTMLElement {
  const view = state.view!;
  const screen = el("section", "screen screen-selection");
  screen.appendChild(el("h2", "", view.title));
  if (state.selectionAttempts > 0) {
    screen.appendChild(
      el("div", "attempt-count", `Attempts so far: ${state.selectionAttempts}`),
    );
  }
  screen.appendChild(
    el("p", "prompt", "Which trace produces the given output? Pick one and confirm."),
  );

  const panes = el("div", "panes");
  panes.appendChild(sourcePane(view.source_lines));
  panes.appendChild(outputPane(view.given_output));
  screen.appendChild(panes);

  const picker = el("div", "choice-picker");
  const select = el("select", "choice-select");
  const placeholder = el("option", "", "choose a trace…");
  placeholder.value = "";
  placeholder.disabled = true;
  placeholder.selected = state.choiceIndex === null;
  select.appendChild(placeholder);
  view.choices.forEach((choice) => {
    const option = el("option", "", `Trace ${choice.index + 1}`);
    option.value = String(choice.index);
    option.selected = state.choiceIndex === choice.index;
    select.appendChild(option);
  });
  select.addEventListener("change", () => {
    if (select.value !== "") handlers.onPick(parseInt(select.value, 10));
  });
  picker.appendChild(select);

  const confirm = button("Confirm answer", "btn-confirm", handlers.onConfirm);
  confirm.disabled = state.choiceIndex === null;
  picker.appendChild(confirm);
  screen.appendChild(picker);

  if (state.choiceIndex !== null) {
    const chosen = view.choices[state.choiceIndex];
    if (chosen) {
      const pre = el("pre", "choice-preview");
      pre.textContent = chosen.lines.join("\n");
      screen.appendChild(pre);
    }
  }
  return screen;
}

// ---------------------------------------------------------------------------
// Selection answer check: verdict + synchronized replay
// ---------------------------------------------------------------------------

export interface ReplayHandlers {
  onStep: (dir: "forward" | "backward") => void;
  onNext: () => void;
  onAnswerAgain: () => void;
}

export function renderSelectionCheck(state: AppState, handlers: ReplayHandlers): HTMLElement {
  const view = state.view!;
  const verdict = state.verdict!;
  const cursor: ReplayCursor = state.cursor ?? verdict.replay.initial;

  const screen = el("section", "screen screen-selection-check");
  const banner = el(
    "div",
    verdict.correct ? "verdict correct" : "verdict incorrect",
    verdict.correct
      ? "Correct! Step through the trace, then continue."
      : "Not quite. Step through the trace you picked to see what it really does.",
  );
  screen.appendChild(banner);

  const panes = el("div", "panes replay-panes");
  panes.appendChild(sourcePane(view.source_lines, cursor.source_line));
  const traceSide = el("div", "trace-side");
  if (verdict.replay.layout) {
    traceSide.appendChild(renderTraceTable(verdict.replay.layout, { markedRow: cursor.trace_row }));
  } else {
    traceSide.appendChild(renderTraceLines(verdict.replay.rows, cursor.trace_row));
  }
  panes.appendChild(traceSide);
  screen.appendChild(panes);

  const controls = el("div", "replay-controls");
  controls.appendChild(button("◀ Back", "btn-back", () => handlers.onStep("backward")));
  controls.appendChild(button("Forward ▶", "btn-forward", () => handlers.onStep("forward")));
  const position = el("span", "replay-position", `row ${cursor.trace_row}`);
  controls.appendChild(position);

  if (verdict.must_retry) {
    controls.appendChild(button("Answer again", "btn-answer-again", handlers.onAnswerAgain));
  }
  const next = button("Next: fill in the values", "btn-next", handlers.onNext);
  next.disabled = !verdict.next_unlocked;
  controls.appendChild(next);
  screen.appendChild(controls);
  return screen;
}

// ---------------------------------------------------------------------------
// Fill-in-the-blank over the enhanced trace table
// ---------------------------------------------------------------------------

export interface FillinHandlers {
  onEdit: (variable: string, row: number, value: number | null) => void;
  onSubmit: () => void;
}

export function renderFillin(state: AppState, handlers: FillinHandlers): HTMLElement {
  const view = state.view!;
  const screen = el("section", "screen screen-fillin");
  screen.appendChild(el("h2", "", view.title));
  if (state.fillinAttempts > 0) {
    screen.appendChild(el("div", "attempt-count", `Attempts so far: ${state.fillinAttempts}`));
  }
  screen.appendChild(
    el(
      "p",
      "prompt",
      `Fill in the value of ${view.fill_in.variables.join(", ")} after each step.`,
    ),
  );

  const panes = el("div", "panes");
  panes.appendChild(sourcePane(view.source_lines));
  if (view.layout) {
    panes.appendChild(
      renderTraceTable(view.layout, {
        inputs: { variables: view.fill_in.variables, rows: view.fill_in.rows, values: state.answers },
        onInput: handlers.onEdit,
      }),
    );
  }
  screen.appendChild(panes);

  screen.appendChild(button("Check my answers", "btn-submit-fillin", handlers.onSubmit));
  return screen;
}

// ---------------------------------------------------------------------------
// Fill-in answer check: wrong cells red, update rows hinted red
// ---------------------------------------------------------------------------

export interface FillinCheckHandlers {
  onRevise: () => void;
  onFinish: () => void;
}

export function renderFillinCheck(state: AppState, handlers: FillinCheckHandlers): HTMLElement {
  const view = state.view!;
  const result = state.fillinResult!;
  const screen = el("section", "screen screen-fillin-check");

  const banner = el(
    "div",
    result.correct ? "verdict correct" : "verdict incorrect",
    result.correct
      ? "All values correct. Well done!"
      : "Some values are wrong or missing; they are marked red. Red rows update the variable.",
  );
  screen.appendChild(banner);

  const cellVerdicts: Record<string, Record<number, boolean>> = {};
  const hintRows: number[] = [];
  for (const [variable, res] of Object.entries(result.results)) {
    cellVerdicts[variable] = {};
    for (const cell of res.cells) cellVerdicts[variable][cell.row] = cell.correct;
    if (!res.all_correct) hintRows.push(...res.hint_rows);
  }

  if (view.layout) {
    screen.appendChild(
      renderTraceTable(view.layout, {
        inputs: { variables: view.fill_in.variables, rows: view.fill_in.rows, values: state.answers },
        cellVerdicts,
        hintRows: result.correct ? null : hintRows,
        readOnly: true,
      }),
    );
  }

  const controls = el("div", "check-controls");
  if (result.must_retry) {
    controls.appendChild(button("Try again", "btn-revise", handlers.onRevise));
  }
  const finish = button("Finish: take the ordering test", "btn-finish", handlers.onFinish);
  finish.disabled = !result.completed;
  controls.appendChild(finish);
  screen.appendChild(controls);
  return screen;
}

// ---------------------------------------------------------------------------
// Trace ordering test: drag-and-drop list + Grade button
// ---------------------------------------------------------------------------

export interface OrderingHandlers {
  onMove: (from: number, to: number) => void;
  onGrade: () => void;
  onHome: () => void;
}

function formatAccuracy(report: GradeReport): string {
  return `Accuracy: ${Math.round(report.accuracy * 100)}% (${report.accuracy_exact})`;
}

export function renderOrdering(state: AppState, handlers: OrderingHandlers): HTMLElement {
  const screen = el("section", "screen screen-ordering");
  screen.appendChild(el("h2", "", "Put the trace lines in a correct execution order"));
  screen.appendChild(
    el("p", "prompt", "Drag lines (or use the arrows) until the order could really happen, then grade."),
  );

  const report = state.orderingReport;
  const violated = new Set<number>();
  if (report) {
    for (const pos of report.exec_violation_positions) violated.add(pos);
    for (const pos of report.ru_violation_positions) violated.add(pos);
  }

  const list = el("ol", "ordering-list");
  let dragFrom: number | null = null;
  state.orderingLines.forEach((text, i) => {
    const item = el("li", "ordering-item");
    item.draggable = !state.orderingBusy;
    item.dataset.index = String(i);
    if (report && violated.has(i + 1)) item.classList.add("violation");

    const grip = el("span", "grip", "☰");
    item.appendChild(grip);
    item.appendChild(el("span", "ordering-text", text));

    const up = button("↑", "btn-up", () => handlers.onMove(i, i - 1));
    const down = button("↓", "btn-down", () => handlers.onMove(i, i + 1));
    up.disabled = state.orderingBusy || i === 0;
    down.disabled = state.orderingBusy || i === state.orderingLines.length - 1;
    item.appendChild(up);
    item.appendChild(down);

    item.addEventListener("dragstart", (ev) => {
      dragFrom = i;
      ev.dataTransfer?.setData("text/plain", String(i));
    });
    item.addEventListener("dragover", (ev) => ev.preventDefault());
    item.addEventListener("drop", (ev) => {
      ev.preventDefault();
      const raw = ev.dataTransfer?.getData("text/plain");
      const from = raw ? parseInt(raw, 10) : dragFrom;
      if (from !== null && from !== undefined && !Number.isNaN(from)) {
        handlers.onMove(from, i);
      }
      dragFrom = null;
    });
    list.appendChild(item);
  });
  screen.appendChild(list);

  const controls = el("div", "ordering-controls");
  const grade = button("Grade", "btn-grade", handlers.onGrade);
  grade.disabled = state.orderingBusy;
  controls.appendChild(grade);
  controls.appendChild(button("Home", "btn-home", handlers.onHome));
  screen.appendChild(controls);

  if (report) {
    const summary = el("div", "grade-summary");
    summary.appendChild(el("div", "accuracy", formatAccuracy(report)));
    summary.appendChild(
      el(
        "div",
        "violation-counts",
        `${report.exec_violation_positions.length} execution-order and ` +
          `${report.ru_violation_positions.length} retrieval-update violations ` +
          `over ${report.total_choices} lines.`,
      ),
    );
    screen.appendChild(summary);
  }
  return screen;
}

// ---------------------------------------------------------------------------
// Shared chrome
// ---------------------------------------------------------------------------

export function renderBanner(message: string, onDismiss: () => void): HTMLElement {
  const banner = el("div", "service-banner");
  banner.appendChild(el("span", "banner-text", `Service problem: ${message}. Your work is kept; try again.`));
  banner.appendChild(button("Dismiss", "btn-dismiss", onDismiss));
  return banner;
}
