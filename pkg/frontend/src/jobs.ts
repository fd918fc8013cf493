/**
 * Poll an optimization job until it reaches a terminal state.
 * Resolves with the final job view on `done`, rejects on `failed` or
 * `cancelled` with the last reported stage in the message so the UI can
 * surface where the run died.
 */

import type { ApiClient } from './api.js';
import type { JobView } from './types.js';

export const JOB_POLL_INTERVAL_MS = 500;

export interface PollOptions {
  intervalMs?: number;
  onProgress?: (view: JobView) => void;
}

export function pollJob(
  client: ApiClient,
  jobId: string,
  options: PollOptions = {},
): Promise<JobView> {
  const intervalMs = options.intervalMs ?? JOB_POLL_INTERVAL_MS;
  return new Promise((resolve, reject) => {
    const tick = async () => {
      let view: JobView;
      try {
        view = await client.getJob(jobId);
      } catch (err) {
        reject(err);
        return;
      }
      options.onProgress?.(view);
      if (view.status === 'done') {
        resolve(view);
        return;
      }
      if (view.status === 'failed' || view.status === 'cancelled') {
        const stage = view.progress.stage || 'startup';
        reject(new Error(view.error ? `job ${view.status} during ${stage}: ${view.error}` : `job ${view.status} during ${stage}`));
        return;
      }
      setTimeout(tick, intervalMs);
    };
    setTimeout(tick, intervalMs);
  });
}
