// Payload shapes of the exercise service HTTP+JSON API. Field names match
// the wire format exactly; everything here is produced by the server.

export interface CatalogEntry {
  id: string;
  title: string;
  tasks: string[];
}

export interface Catalog {
  exercises: CatalogEntry[];
}

export interface ChoiceView {
  index: number;
  lines: string[];
}

export interface FillInSpec {
  variables: string[];
  rows: number[];
}

export interface BoxView {
  thread: string;
  depth: number;
  start_row: number;
  end_row: number;
  label: string;
  synthetic: boolean;
  color_index: number;
}

export interface LayoutView {
  row_count: number;
  thread_columns: string[];
  boxes: BoxView[];
  input_rows: number[];
}

export interface ExerciseView {
  id: string;
  title: string;
  program_source: string;
  source_lines: string[];
  given_output: string[];
  choices: ChoiceView[];
  tracked_vars: string[];
  fill_in: FillInSpec;
  layout: LayoutView | null;
  ordering_items: string[];
}

export interface ReplayRow {
  row: number;
  thread: string;
  text: string;
  source_line: number;
}

export interface ReplayCursor {
  cursor: number;
  trace_row: number;
  source_line: number;
}

export interface ReplayBundle {
  choice_index: number;
  rows: ReplayRow[];
  layout: LayoutView | null;
  initial: ReplayCursor;
  step_url: string;
}

export interface SelectionResponse {
  correct: boolean;
  attempt_number: number;
  must_retry: boolean;
  next_unlocked: boolean;
  replay: ReplayBundle;
}

export interface ReplayStepResponse {
  cursor: number;
  trace_row: number;
  source_line: number;
  thread: string;
  text: string;
}

export interface CellResult {
  row: number;
  submitted: number | null;
  correct: boolean;
}

export interface VariableResult {
  all_correct: boolean;
  cells: CellResult[];
  hint_rows: number[];
}

export interface FillInResponse {
  correct: boolean;
  completed: boolean;
  must_retry: boolean;
  attempt_number: number;
  results: Record<string, VariableResult>;
}

export interface GradeReport {
  exec_violation_positions: number[];
  ru_violation_positions: number[];
  errors: number;
  total_choices: number;
  accuracy: number;
  accuracy_exact: string;
}

export interface OrderingResponse {
  report: GradeReport;
  attempt_number: number;
}

/** Integer cell values keyed by variable name, then by trace row. */
export type Answers = Record<string, Record<number, number | null>>;
