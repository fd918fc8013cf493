/**
 * Typed client for the layoutforge HTTP service. All studio traffic goes
 * through this class so tests can count or stub requests in one place.
 */

import type {
  AnalyzeResponse,
  JobRequest,
  JobView,
  LayoutDocument,
  MemberEntry,
  RoundAcceptResponse,
  RoundManifest,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
    public readonly path?: string,
  ) {
    super(path ? `${path}: ${message}` : message);
    this.name = 'ApiError';
  }
}

export interface AnalyzeRequest {
  layout_id?: string;
  document?: LayoutDocument;
  resolution?: number;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const data = await response.json().catch(() => ({}));
    if (!response.ok) {
      const err = (data as { error?: { message?: string; path?: string } }).error;
      throw new ApiError(response.status, err?.message ?? response.statusText, err?.path);
    }
    return data as T;
  }

  createLayout(document: LayoutDocument): Promise<{ layout_id: string; name: string }> {
    return this.request('POST', '/layouts', document);
  }

  analyze(req: AnalyzeRequest): Promise<AnalyzeResponse> {
    return this.request('POST', '/analyze', req);
  }

  startJob(req: JobRequest): Promise<JobView> {
    return this.request('POST', '/jobs', req);
  }

  getJob(jobId: string): Promise<JobView> {
    return this.request('GET', `/jobs/${jobId}`);
  }

  getMember(jobId: string, index: number): Promise<MemberEntry> {
    return this.request('GET', `/jobs/${jobId}/members/${index}`);
  }

  getManifest(jobId: string): Promise<RoundManifest> {
    return this.request('GET', `/jobs/${jobId}/manifest`);
  }

  cancelJob(jobId: string): Promise<JobView> {
    return this.request('POST', `/jobs/${jobId}/cancel`);
  }

  acceptRound(jobId: string, memberIndex: number): Promise<RoundAcceptResponse> {
    return this.request('POST', '/rounds', { job_id: jobId, member_index: memberIndex });
  }
}
