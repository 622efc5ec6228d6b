/**
 * Thin client over the decision-support HTTP API.
 *
 * Unwraps the {ok, data|error} envelope and cancels a superseded in-flight
 * request per channel, so each tab has at most one outstanding call.
 */

import type {
  AllocationPayload,
  Envelope,
  ForecastPayload,
  LockdownPayload,
  RegionsPayload,
  SeriesKind,
} from './types';

export class ApiError extends Error {
  code: string;
  detail: unknown;

  constructor(code: string, message: string, detail?: unknown) {
    super(message);
    this.code = code;
    this.detail = detail;
  }
}

const inflight = new Map<string, AbortController>();

async function call<T>(channel: string, url: string, init?: RequestInit): Promise<T> {
  inflight.get(channel)?.abort();
  const controller = new AbortController();
  inflight.set(channel, controller);
  let resp: Response;
  try {
    resp = await fetch(url, { ...init, signal: controller.signal });
  } catch (err) {
    if ((err as Error).name === 'AbortError') throw err;
    throw new ApiError('network_error', `service unreachable: ${(err as Error).message}`);
  } finally {
    if (inflight.get(channel) === controller) inflight.delete(channel);
  }
  let body: Envelope<T>;
  try {
    body = (await resp.json()) as Envelope<T>;
  } catch {
    throw new ApiError('bad_response', `non-JSON response (HTTP ${resp.status})`);
  }
  if (!body.ok) {
    throw new ApiError(body.error.code, body.error.message, body.error.detail);
  }
  return body.data;
}

export function fetchRegions(): Promise<RegionsPayload> {
  return call('regions', '/regions');
}

export function fetchForecast(
  region: string,
  kind: SeriesKind,
  horizon?: number,
): Promise<ForecastPayload> {
  const params = new URLSearchParams({ region, kind });
  if (horizon !== undefined) params.set('horizon', String(horizon));
  return call('prediction', `/forecast?${params}`);
}

export function postAllocate(body: {
  item: string;
  supply: number;
  claims: { unit: string; demand: number }[];
  blend?: number;
}): Promise<AllocationPayload> {
  return call('allocation', '/allocate', {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(body),
  });
}

export function postLockdown(body: {
  availabilities: { item: string; available_per_day: number }[];
  region?: string;
}): Promise<LockdownPayload> {
  return call('lockdown', '/lockdown', {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(body),
  });
}
