/** Typed client for the decision service. The UI does no ranking or
 * weighting arithmetic of its own: every displayed number comes out of
 * one of these calls. */

export interface Criterion {
  id: string;
  name: string;
  sense: "benefit" | "cost";
}

export interface SurveyPayload {
  best: number;
  worst: number;
  bo: number[];
  ow: number[];
}

export interface WeightsOut {
  weights: number[];
  xi_star?: number;
  consistency_ratio?: number | null;
  inconsistent?: boolean;
}

export interface RankingEntry {
  alternative: string;
  s_plus: number;
  s_minus: number;
  score: number;
  rank: number;
  tied: boolean;
}

export interface SurveyFeedback extends WeightsOut {
  respondent: string;
}

export interface RankResponse {
  weights: WeightsOut;
  ranking: RankingEntry[];
}

export interface SensitivityEntry {
  delta: number;
  flipped: boolean;
  reranking: RankingEntry[];
}

export interface SensitivityResponse {
  criterion: string;
  base_ranking: RankingEntry[];
  entries: SensitivityEntry[];
}

export interface Violation {
  code: string;
  message: string;
  field: string | null;
  index: number | null;
}

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly violations: Violation[];

  constructor(status: number, code: string, message: string,
              violations: Violation[] = []) {
    super(message);
    this.status = status;
    this.code = code;
    this.violations = violations;
  }
}

async function request<T>(base: string, method: string, path: string,
                          body?: unknown): Promise<T> {
  const response = await fetch(base + path, {
    method,
    headers: body === undefined ? {} : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    const violations: Violation[] = payload?.detail?.violations ?? [];
    throw new ApiError(response.status, payload?.code ?? "Unknown",
                       payload?.message ?? response.statusText, violations);
  }
  return payload as T;
}

export class DecisionApi {
  constructor(private readonly base: string = "") {}

  health(): Promise<{ status: string }> {
    return request(this.base, "GET", "/healthz");
  }

  createSession(criteria: Criterion[]):
      Promise<{ session_id: string; n_criteria: number;
                free_comparisons: number }> {
    return request(this.base, "POST", "/sessions", { criteria });
  }

  putSurvey(sessionId: string, respondent: string,
            survey: SurveyPayload): Promise<SurveyFeedback> {
    return request(this.base, "PUT",
                   `/sessions/${sessionId}/surveys/${encodeURIComponent(respondent)}`,
                   survey);
  }

  aggregatedWeights(sessionId: string):
      Promise<{ aggregated: WeightsOut; respondents: SurveyFeedback[] }> {
    return request(this.base, "GET", `/sessions/${sessionId}/weights`);
  }

  putMatrix(sessionId: string, matrix: unknown):
      Promise<{ ok: boolean; alternatives: number; stage: string }> {
    return request(this.base, "PUT", `/sessions/${sessionId}/matrix`, matrix);
  }

  rank(sessionId: string, weights?: number[]): Promise<RankResponse> {
    return request(this.base, "POST", `/sessions/${sessionId}/rank`,
                   weights === undefined ? {} : { weights });
  }

  sensitivity(sessionId: string, criterion: string,
              deltas: number[]): Promise<SensitivityResponse> {
    return request(this.base, "POST", `/sessions/${sessionId}/sensitivity`,
                   { criterion, deltas });
  }
}
