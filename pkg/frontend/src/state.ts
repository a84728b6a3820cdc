import type {
  Answers,
  ExerciseView,
  FillInResponse,
  GradeReport,
  OrderingResponse,
  ReplayCursor,
  SelectionResponse,
} from "./types.js";

// Screen flow: home -> selection <-> selectionCheck -> fillin <-> fillinCheck,
// with the ordering test reachable from home at any time (it is given both
// before and after the exercise). Forward moves are gated exclusively by
// flags the service returned; an incorrect verdict only ever leads back to
// the question it came from.

export type Screen =
  | "home"
  | "selection"
  | "selectionCheck"
  | "fillin"
  | "fillinCheck"
  | "orderingTest";

export interface AppState {
  screen: Screen;
  learner: string;
  view: ExerciseView | null;
  choiceIndex: number | null;
  selectionAttempts: number;
  verdict: SelectionResponse | null;
  cursor: ReplayCursor | null;
  answers: Answers;
  fillinAttempts: number;
  fillinResult: FillInResponse | null;
  orderingLines: string[];
  orderingReport: GradeReport | null;
  orderingAttempts: number;
  orderingBusy: boolean;
  banner: string | null;
}

export type AppEvent =
  | { type: "enter"; learner: string; view: ExerciseView }
  | { type: "openOrdering"; learner: string; view: ExerciseView }
  | { type: "pickChoice"; index: number }
  | { type: "selectionVerdict"; response: SelectionResponse }
  | { type: "replayMoved"; cursor: ReplayCursor }
  | { type: "next" }
  | { type: "answerAgain" }
  | { type: "editCell"; variable: string; row: number; value: number | null }
  | { type: "fillinVerdict"; response: FillInResponse }
  | { type: "reviseFillin" }
  | { type: "finish" }
  | { type: "moveLine"; from: number; to: number }
  | { type: "gradePending" }
  | { type: "orderingGraded"; response: OrderingResponse }
  | { type: "serviceFailure"; message: string }
  | { type: "dismissBanner" }
  | { type: "goHome" };

export function initialState(): AppState {
  return {
    screen: "home",
    learner: "",
    view: null,
    choiceIndex: null,
    selectionAttempts: 0,
    verdict: null,
    cursor: null,
    answers: {},
    fillinAttempts: 0,
    fillinResult: null,
    orderingLines: [],
    orderingReport: null,
    orderingAttempts: 0,
    orderingBusy: false,
    banner: null,
  };
}

function blankAnswers(view: ExerciseView): Answers {
  const answers: Answers = {};
  for (const variable of view.fill_in.variables) {
    answers[variable] = {};
    for (const row of view.fill_in.rows) {
      answers[variable][row] = null;
    }
  }
  return answers;
}

export function reorder(lines: string[], from: number, to: number): string[] {
  if (from < 0 || from >= lines.length || to < 0 || to >= lines.length) return lines;
  if (from === to) return lines;
  const next = lines.slice();
  const moved = next.splice(from, 1)[0];
  if (moved === undefined) return lines;
  next.splice(to, 0, moved);
  return next;
}

export function reduce(state: AppState, event: AppEvent): AppState {
  switch (event.type) {
    case "enter":
      return {
        ...initialState(),
        screen: "selection",
        learner: event.learner,
        view: event.view,
        answers: blankAnswers(event.view),
        orderingLines: event.view.ordering_items.slice(),
      };

    case "openOrdering":
      return {
        ...initialState(),
        screen: "orderingTest",
        learner: event.learner,
        view: event.view,
        answers: blankAnswers(event.view),
        orderingLines: event.view.ordering_items.slice(),
      };

    case "pickChoice":
      if (state.screen !== "selection" || !state.view) return state;
      if (event.index < 0 || event.index >= state.view.choices.length) return state;
      return { ...state, choiceIndex: event.index };

    case "selectionVerdict":
      if (state.screen !== "selection") return state;
      return {
        ...state,
        screen: "selectionCheck",
        verdict: event.response,
        selectionAttempts: event.response.attempt_number,
        cursor: event.response.replay.initial,
      };

    case "replayMoved":
      if (state.screen !== "selectionCheck") return state;
      return { ...state, cursor: event.cursor };

    case "next":
      // The only way forward; the service must have unlocked it.
      if (state.screen !== "selectionCheck") return state;
      if (!state.verdict?.next_unlocked) return state;
      return { ...state, screen: "fillin" };

    case "answerAgain":
      if (state.screen !== "selectionCheck") return state;
      return { ...state, screen: "selection", verdict: null, cursor: null, choiceIndex: null };

    case "editCell": {
      if (state.screen !== "fillin" || !state.view) return state;
      const cells = state.answers[event.variable];
      if (!cells || !(event.row in cells)) return state;
      return {
        ...state,
        answers: {
          ...state.answers,
          [event.variable]: { ...cells, [event.row]: event.value },
        },
      };
    }

    case "fillinVerdict":
      if (state.screen !== "fillin") return state;
      return {
        ...state,
        screen: "fillinCheck",
        fillinResult: event.response,
        fillinAttempts: event.response.attempt_number,
      };

    case "reviseFillin":
      if (state.screen !== "fillinCheck") return state;
      return { ...state, screen: "fillin", fillinResult: null };

    case "finish":
      // Completing the exercise is gated on the service's completion flag.
      if (state.screen !== "fillinCheck") return state;
      if (!state.fillinResult?.completed) return state;
      return { ...state, screen: "orderingTest" };

    case "moveLine":
      if (state.screen !== "orderingTest" || state.orderingBusy) return state;
      return { ...state, orderingLines: reorder(state.orderingLines, event.from, event.to) };

    case "gradePending":
      if (state.screen !== "orderingTest" || state.orderingBusy) return state;
      return { ...state, orderingBusy: true };

    case "orderingGraded":
      if (state.screen !== "orderingTest") return state;
      return {
        ...state,
        orderingBusy: false,
        orderingReport: event.response.report,
        orderingAttempts: event.response.attempt_number,
      };

    case "serviceFailure":
      // Keep everything the learner typed; just surface the failure.
      return { ...state, banner: event.message, orderingBusy: false };

    case "dismissBanner":
      return { ...state, banner: null };

    case "goHome":
      return { ...initialState(), learner: state.learner };

    default:
      return state;
  }
}
