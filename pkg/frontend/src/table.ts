import { threadColor } from "./palette.js";
import type { Answers, LayoutView, ReplayRow } from "./types.js";

// Enhanced trace table: a CSS grid with one column of row numbers, one
// column per thread, and one value column per tracked variable. Boxes are
// placed purely from TableLayout geometry (grid-row span per box, indent
// per nesting depth); idle stretches simply stay empty.

export interface TableOptions {
  /** Trace row to emphasize in red (replay cursor). */
  markedRow?: number | null;
  /** Render value-input fields for these variables on these rows. */
  inputs?: { variables: string[]; rows: number[]; values: Answers } | null;
  /** Per-variable per-row verdicts from the service; false renders red. */
  cellVerdicts?: Record<string, Record<number, boolean>> | null;
  /** Update rows to emphasize red as hints after a failed check. */
  hintRows?: number[] | null;
  /** Disable the input fields (answer-check screen). */
  readOnly?: boolean;
  onInput?: (variable: string, row: number, value: number | null) => void;
}

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

/** Keep only an optional minus sign and digits; "" and "-" mean blank. */
export function parseCellValue(raw: string): { cleaned: string; value: number | null } {
  let cleaned = raw.replace(/[^0-9-]/g, "");
  cleaned = cleaned.replace(/(?!^)-/g, "");
  if (cleaned === "" || cleaned === "-") return { cleaned, value: null };
  return { cleaned, value: parseInt(cleaned, 10) };
}

export function renderTraceTable(layout: LayoutView, opts: TableOptions = {}): HTMLElement {
  const threads = layout.thread_columns;
  const variables = opts.inputs ? opts.inputs.variables : [];
  const table = el("div", "trace-table");
  table.style.setProperty("--rows", String(layout.row_count));
  table.style.setProperty("--threads", String(threads.length));
  table.style.setProperty("--vars", String(variables.length));

  const columnOf = new Map<string, number>();
  threads.forEach((name, i) => columnOf.set(name, i + 2));
  const colorOf = new Map<string, number>();
  threads.forEach((name, i) => colorOf.set(name, i));
  for (const box of layout.boxes) colorOf.set(box.thread, box.color_index);

  const header = el("div", "tt-header");
  header.appendChild(el("span", "tt-corner", "#"));
  for (const name of threads) {
    const cell = el("span", "tt-thread-name", name);
    cell.style.setProperty("--thread-color", threadColor(colorOf.get(name) ?? 0));
    header.appendChild(cell);
  }
  for (const variable of variables) {
    header.appendChild(el("span", "tt-var-name", variable));
  }
  table.appendChild(header);

  const grid = el("div", "tt-grid");

  const hintRows = new Set(opts.hintRows ?? []);
  for (let row = 1; row <= layout.row_count; row++) {
    const num = el("div", "tt-rownum", String(row));
    num.dataset.row = String(row);
    num.style.gridRow = String(row);
    num.style.gridColumn = "1";
    if (row === opts.markedRow) num.classList.add("marked");
    if (hintRows.has(row)) num.classList.add("hint");
    grid.appendChild(num);
  }

  for (const box of layout.boxes) {
    const column = columnOf.get(box.thread);
    if (column === undefined) continue;
    const node = el("div", box.synthetic ? "tt-box tt-root" : "tt-box");
    node.dataset.thread = box.thread;
    node.dataset.depth = String(box.depth);
    node.style.gridRow = `${box.start_row} / ${box.end_row + 1}`;
    node.style.gridColumn = String(column);
    node.style.setProperty("--depth", String(box.depth));
    node.style.setProperty("--thread-color", threadColor(box.color_index));
    if (box.synthetic) {
      node.appendChild(el("span", "tt-root-label", box.label));
    } else {
      node.dataset.row = String(box.start_row);
      if (box.start_row === opts.markedRow) node.classList.add("marked");
      node.appendChild(el("span", "tt-event-text", box.label));
    }
    grid.appendChild(node);
  }

  if (opts.inputs) {
    const inputRows = new Set(layout.input_rows);
    variables.forEach((variable, vi) => {
      const verdicts = opts.cellVerdicts?.[variable];
      for (const row of opts.inputs!.rows) {
        if (!inputRows.has(row)) continue;
        const cell = el("div", "tt-value-cell");
        cell.style.gridRow = String(row);
        cell.style.gridColumn = String(2 + threads.length + vi);
        if (hintRows.has(row)) cell.classList.add("hint");
        const input = el("input", "tt-value");
        input.type = "text";
        input.inputMode = "numeric";
        input.autocomplete = "off";
        input.dataset.var = variable;
        input.dataset.row = String(row);
        const current = opts.inputs!.values[variable]?.[row];
        input.value = current === null || current === undefined ? "" : String(current);
        if (verdicts && verdicts[row] === false) cell.classList.add("wrong");
        if (opts.readOnly) {
          input.disabled = true;
        } else {
          input.addEventListener("input", () => {
            const { cleaned, value } = parseCellValue(input.value);
            if (input.value !== cleaned) input.value = cleaned;
            opts.onInput?.(variable, row, value);
          });
        }
        cell.appendChild(input);
        grid.appendChild(cell);
      }
    });
  }

  table.appendChild(grid);
  return table;
}

/** Fallback trace view for choices with no feasible layout: plain rows. */
export function renderTraceLines(rows: ReplayRow[], markedRow?: number | null): HTMLElement {
  const list = el("div", "trace-lines");
  for (const row of rows) {
    const line = el("div", "tl-line", `[${row.thread}] ${row.text}`);
    line.dataset.row = String(row.row);
    if (row.row === markedRow) line.classList.add("marked");
    list.appendChild(line);
  }
  return list;
}
