/**
 * Typed HTTP client for the scriptforge service.
 *
 * The only configuration is the API base URL and the caller's role.
 * Mutations carry a client-generated idempotency key that is reused across
 * retries, so a retried request can never double-apply; transient network
 * failures and 5xx responses are retried with exponential backoff.
 */

import type {
  ComparisonSubmission,
  EvalTaskOrDone,
  EditPayload,
  JobRecord,
  RatingSubmission,
  ReviewTask,
  SessionSceneSpec,
  VerdictAction,
  VerdictResult,
} from './types.js';

export type Role = 'operator' | 'rater';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`request failed with status ${status}`);
    this.name = 'ApiError';
  }
}

export interface ClientOptions {
  role?: Role;
  maxAttempts?: number;
  /** Base backoff delay in milliseconds; doubles per retry. */
  backoffMs?: number;
  fetchImpl?: typeof fetch;
  sleep?: (ms: number) => Promise<void>;
}

export function newIdempotencyKey(): string {
  return globalThis.crypto.randomUUID();
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export class ApiClient {
  readonly baseUrl: string;
  readonly role: Role;
  private readonly maxAttempts: number;
  private readonly backoffMs: number;
  private readonly fetchImpl: typeof fetch;
  private readonly sleep: (ms: number) => Promise<void>;

  constructor(baseUrl: string, options: ClientOptions = {}) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.role = options.role ?? 'rater';
    this.maxAttempts = options.maxAttempts ?? 3;
    this.backoffMs = options.backoffMs ?? 250;
    this.fetchImpl = options.fetchImpl ?? globalThis.fetch.bind(globalThis);
    this.sleep = options.sleep ?? defaultSleep;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    idempotencyKey?: string,
  ): Promise<T> {
    const headers: Record<string, string> = { 'X-Role': this.role };
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    if (idempotencyKey) headers['X-Idempotency-Key'] = idempotencyKey;

    let lastError: unknown;
    for (let attempt = 0; attempt < this.maxAttempts; attempt += 1) {
      if (attempt > 0) await this.sleep(this.backoffMs * 2 ** (attempt - 1));
      let response: Response;
      try {
        response = await this.fetchImpl(`${this.baseUrl}${path}`, {
          method,
          headers,
          body: body === undefined ? undefined : JSON.stringify(body),
        });
      } catch (err) {
        lastError = err; // network failure: retry with the same key
        continue;
      }
      if (response.status >= 500) {
        lastError = new ApiError(response.status, await response.text());
        continue;
      }
      if (!response.ok) {
        const payload = (await response.json().catch(() => ({}))) as { detail?: unknown };
        throw new ApiError(response.status, payload.detail ?? null);
      }
      return (await response.json()) as T;
    }
    throw lastError instanceof Error ? lastError : new Error(String(lastError));
  }

  // --- review queue ---

  nextReviewTask(reviewerId: string): Promise<ReviewTask> {
    return this.request('GET', `/review/next?reviewer_id=${encodeURIComponent(reviewerId)}`);
  }

  submitVerdict(
    pairId: string,
    action: VerdictAction,
    reviewerId: string,
    options: { edit?: EditPayload; reason?: string } = {},
  ): Promise<VerdictResult> {
    return this.request(
      'POST',
      `/review/${encodeURIComponent(pairId)}/verdict`,
      {
        action,
        reviewer_id: reviewerId,
        edit: options.edit ?? null,
        reason: options.reason ?? null,
      },
      newIdempotencyKey(),
    );
  }

  // --- evaluation sessions ---

  createSession(
    scenes: SessionSceneSpec[],
    options: { humanSystem?: string; baselineSystem?: string; seed?: number } = {},
  ): Promise<{ session_id: string }> {
    return this.request(
      'POST',
      '/eval/sessions',
      {
        scenes,
        human_system: options.humanSystem ?? null,
        baseline_system: options.baselineSystem ?? null,
        seed: options.seed ?? 0,
      },
      newIdempotencyKey(),
    );
  }

  nextEvalTask(sessionId: string, raterId: string): Promise<EvalTaskOrDone> {
    return this.request(
      'GET',
      `/eval/sessions/${encodeURIComponent(sessionId)}/next?rater_id=${encodeURIComponent(raterId)}`,
    );
  }

  submitRating(sessionId: string, rating: RatingSubmission): Promise<{ accepted: boolean }> {
    return this.request(
      'POST',
      `/eval/sessions/${encodeURIComponent(sessionId)}/rating`,
      rating,
      newIdempotencyKey(),
    );
  }

  submitComparison(
    sessionId: string,
    comparison: ComparisonSubmission,
  ): Promise<{ accepted: boolean }> {
    return this.request(
      'POST',
      `/eval/sessions/${encodeURIComponent(sessionId)}/comparison`,
      comparison,
      newIdempotencyKey(),
    );
  }

  sessionReport(sessionId: string): Promise<Record<string, unknown>> {
    return this.request('GET', `/eval/sessions/${encodeURIComponent(sessionId)}/report`);
  }

  // --- jobs (operator tooling) ---

  submitJob(kind: string, params: Record<string, unknown>): Promise<JobRecord> {
    return this.request(
      'POST',
      '/jobs',
      { kind, params, idempotency_key: newIdempotencyKey() },
    );
  }

  getJob(jobId: string): Promise<JobRecord> {
    return this.request('GET', `/jobs/${encodeURIComponent(jobId)}`);
  }

  async waitForJob(jobId: string, pollMs = 100, timeoutMs = 30_000): Promise<JobRecord> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.state === 'done' || job.state === 'failed') return job;
      if (Date.now() > deadline) throw new Error(`job ${jobId} still ${job.state} after timeout`);
      await this.sleep(pollMs);
    }
  }
}
