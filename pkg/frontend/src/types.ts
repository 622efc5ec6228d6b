/**
 * Shared types: API payloads (mirroring the service's JSON shapes) and UI state.
 */

export type SeriesKind = 'confirmed' | 'recovered' | 'deceased' | 'active';

export type TabName = 'prediction' | 'allocation' | 'lockdown';

export interface ApiErrorPayload {
  code: string;
  message: string;
  detail?: unknown;
}

export type Envelope<T> =
  | { ok: true; data: T }
  | { ok: false; error: ApiErrorPayload };

export interface RegionInfo {
  code: string;
  name: string;
  days: number;
  first_date: string;
  last_date: string;
}

export interface RegionsPayload {
  regions: RegionInfo[];
  retrieved_at: string;
}

export interface SeriesPoint {
  date: string;
  value: number;
}

export interface ForecastPayload {
  region: { code: string; name: string };
  kind: SeriesKind;
  horizon: number;
  observed: SeriesPoint[];
  points: SeriesPoint[];
  model: {
    coefficients: number[];
    transform: string;
    fit_window_end: string;
    residual_norm: number;
  };
}

export interface AllocationAwardRow {
  unit: string;
  name: string;
  demand: number;
  peak_active: number;
  peak_active_source: string;
  effective_demand: number;
  award: number;
}

export interface AllocationPayload {
  item: { name: string; unit: string; kappa: number };
  supply: number;
  blend: number;
  awards: AllocationAwardRow[];
  total_awarded: number;
  exhausted: boolean;
}

export interface BreachRow {
  date: string;
  day: number;
  forecast_demand: number;
  availability: number;
}

export interface LockdownItemResult {
  item: { name: string; unit: string; kappa: number };
  available_per_day: number;
  demand_curve: number[];
  breaches: BreachRow[];
}

export interface LockdownPayload {
  recommendation: 'lockdown' | 'no-lockdown';
  horizon: number;
  mode: string;
  region: { code: string; name: string };
  items: LockdownItemResult[];
}

export interface AllocationFormRow {
  unit: string;
  demand: string;
}

export interface AvailabilityFormRow {
  item: string;
  amount: string;
}

export interface ViewState {
  tab: TabName;
  region: string;
  kind: SeriesKind;
}
