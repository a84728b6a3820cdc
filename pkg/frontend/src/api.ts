import type {
  Answers,
  Catalog,
  ExerciseView,
  FillInResponse,
  OrderingResponse,
  ReplayStepResponse,
  SelectionResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ServiceError";
  }
}

async function errorDetail(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return res.statusText || `HTTP ${res.status}`;
  }
}

/**
 * Thin typed client for the exercise service. All correctness verdicts
 * come back through these calls; the UI never grades anything itself.
 */
export class ServiceClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ServiceError(0, `service unreachable: ${String(err)}`);
    }
    if (!res.ok) {
      throw new ServiceError(res.status, await errorDetail(res));
    }
    return (await res.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  catalog(): Promise<Catalog> {
    return this.request<Catalog>("/exercises");
  }

  exercise(id: string, learner?: string): Promise<ExerciseView> {
    const query = learner ? `?learner=${encodeURIComponent(learner)}` : "";
    return this.request<ExerciseView>(`/exercises/${encodeURIComponent(id)}${query}`);
  }

  replayStep(
    exerciseId: string,
    choice: number,
    cursor: number,
    dir: "forward" | "backward",
  ): Promise<ReplayStepResponse> {
    const id = encodeURIComponent(exerciseId);
    return this.request<ReplayStepResponse>(
      `/exercises/${id}/replay?choice=${choice}&cursor=${cursor}&dir=${dir}`,
    );
  }

  submitSelection(
    learner: string,
    exerciseId: string,
    choiceIndex: number,
  ): Promise<SelectionResponse> {
    return this.post<SelectionResponse>("/attempts/selection", {
      learner,
      exercise_id: exerciseId,
      choice_index: choiceIndex,
    });
  }

  submitFillIn(learner: string, exerciseId: string, answers: Answers): Promise<FillInResponse> {
    const wire: Record<string, Record<string, number | null>> = {};
    for (const [variable, cells] of Object.entries(answers)) {
      wire[variable] = {};
      for (const [row, value] of Object.entries(cells)) {
        wire[variable][row] = value;
      }
    }
    return this.post<FillInResponse>("/attempts/fillin", {
      learner,
      exercise_id: exerciseId,
      answers: wire,
    });
  }

  submitOrdering(
    learner: string,
    exerciseId: string,
    orderedLines: string[],
  ): Promise<OrderingResponse> {
    return this.post<OrderingResponse>("/attempts/ordering", {
      learner,
      exercise_id: exerciseId,
      ordered_lines: orderedLines,
    });
  }
}
