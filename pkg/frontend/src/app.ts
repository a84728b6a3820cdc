import { ServiceClient } from "./api.js";
import {
  renderBanner,
  renderFillin,
  renderFillinCheck,
  renderHome,
  renderOrdering,
  renderSelection,
  renderSelectionCheck,
} from "./screens.js";
import { initialState, reduce, type AppEvent, type AppState } from "./state.js";
import type { Catalog } from "./types.js";

/**
 * Wires the screen-flow machine to the service client and re-renders the
 * current screen into the root element after every state change. Every
 * verdict shown on screen arrived in a service response.
 */
export class App {
  state: AppState = initialState();
  private catalog: Catalog = { exercises: [] };

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ServiceClient,
  ) {}

  async boot(): Promise<void> {
    try {
      this.catalog = await this.client.catalog();
    } catch (err) {
      this.state = reduce(this.state, { type: "serviceFailure", message: String(err) });
    }
    this.render();
  }

  dispatch(event: AppEvent): void {
    this.state = reduce(this.state, event);
    // Rebuilding the DOM mid-keystroke would blur the active input field;
    // the field already shows the typed text, so skip the re-render.
    if (event.type !== "editCell") this.render();
  }

  private async call<T>(work: () => Promise<T>, onOk: (result: T) => void): Promise<void> {
    try {
      onOk(await work());
    } catch (err) {
      this.dispatch({ type: "serviceFailure", message: err instanceof Error ? err.message : String(err) });
    }
  }

  startExercise(learner: string, exerciseId: string): Promise<void> {
    return this.call(
      () => this.client.exercise(exerciseId, learner),
      (view) => this.dispatch({ type: "enter", learner, view }),
    );
  }

  startOrdering(learner: string, exerciseId: string): Promise<void> {
    return this.call(
      () => this.client.exercise(exerciseId, learner),
      (view) => this.dispatch({ type: "openOrdering", learner, view }),
    );
  }

  confirmSelection(): Promise<void> {
    const { learner, view, choiceIndex } = this.state;
    if (!view || choiceIndex === null) return Promise.resolve();
    return this.call(
      () => this.client.submitSelection(learner, view.id, choiceIndex),
      (response) => this.dispatch({ type: "selectionVerdict", response }),
    );
  }

  stepReplay(dir: "forward" | "backward"): Promise<void> {
    const { view, verdict, cursor } = this.state;
    if (!view || !verdict || !cursor) return Promise.resolve();
    return this.call(
      () => this.client.replayStep(view.id, verdict.replay.choice_index, cursor.cursor, dir),
      (step) =>
        this.dispatch({
          type: "replayMoved",
          cursor: { cursor: step.cursor, trace_row: step.trace_row, source_line: step.source_line },
        }),
    );
  }

  submitFillin(): Promise<void> {
    const { learner, view, answers } = this.state;
    if (!view) return Promise.resolve();
    return this.call(
      () => this.client.submitFillIn(learner, view.id, answers),
      (response) => this.dispatch({ type: "fillinVerdict", response }),
    );
  }

  gradeOrdering(): Promise<void> {
    const { learner, view, orderingLines, orderingBusy } = this.state;
    if (!view || orderingBusy) return Promise.resolve();
    this.dispatch({ type: "gradePending" });
    return this.call(
      () => this.client.submitOrdering(learner, view.id, orderingLines),
      (response) => this.dispatch({ type: "orderingGraded", response }),
    );
  }

  render(): void {
    const pieces: HTMLElement[] = [];
    if (this.state.banner !== null) {
      pieces.push(renderBanner(this.state.banner, () => this.dispatch({ type: "dismissBanner" })));
    }
    pieces.push(this.renderScreen());
    this.root.replaceChildren(...pieces);
  }

  private renderScreen(): HTMLElement {
    const s = this.state;
    switch (s.screen) {
      case "home":
        return renderHome(this.catalog, s.learner, {
          onStart: (learner, id) => void this.startExercise(learner, id),
          onOrderingTest: (learner, id) => void this.startOrdering(learner, id),
        });
      case "selection":
        return renderSelection(s, {
          onPick: (index) => this.dispatch({ type: "pickChoice", index }),
          onConfirm: () => void this.confirmSelection(),
        });
      case "selectionCheck":
        return renderSelectionCheck(s, {
          onStep: (dir) => void this.stepReplay(dir),
          onNext: () => this.dispatch({ type: "next" }),
          onAnswerAgain: () => this.dispatch({ type: "answerAgain" }),
        });
      case "fillin":
        return renderFillin(s, {
          onEdit: (variable, row, value) => this.dispatch({ type: "editCell", variable, row, value }),
          onSubmit: () => void this.submitFillin(),
        });
      case "fillinCheck":
        return renderFillinCheck(s, {
          onRevise: () => this.dispatch({ type: "reviseFillin" }),
          onFinish: () => this.dispatch({ type: "finish" }),
        });
      case "orderingTest":
        return renderOrdering(s, {
          onMove: (from, to) => this.dispatch({ type: "moveLine", from, to }),
          onGrade: () => void this.gradeOrdering(),
          onHome: () => this.dispatch({ type: "goHome" }),
        });
    }
  }
}
