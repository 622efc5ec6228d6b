/**
 * Prediction tab: pick a region and series kind, fetch the forecast and
 * chart observed vs predicted values with the forecast start marked.
 */

import { ApiError, fetchForecast, fetchRegions } from '../api';
import { renderChart } from '../chart';
import type { SeriesKind, ViewState } from '../types';

const KINDS: SeriesKind[] = ['active', 'confirmed', 'recovered', 'deceased'];

export interface PredictionTabOptions {
  state: ViewState;
  onStateChange: (state: ViewState) => void;
}

export function initPredictionTab(root: HTMLElement, options: PredictionTabOptions): void {
  root.innerHTML = `
    <form data-role="prediction-form">
      <label>Region
        <select data-role="region-select"><option value="">--</option></select>
      </label>
      <label>Series
        <select data-role="kind-select">
          ${KINDS.map((k) => `<option value="${k}">${k}</option>`).join('')}
        </select>
      </label>
      <button type="submit">Predict</button>
    </form>
    <div data-role="error-banner" class="banner error" hidden></div>
    <div data-role="chart-host"></div>
    <div data-role="forecast-meta"></div>
  `;

  const form = root.querySelector('[data-role=prediction-form]') as HTMLFormElement;
  const regionSelect = root.querySelector('[data-role=region-select]') as HTMLSelectElement;
  const kindSelect = root.querySelector('[data-role=kind-select]') as HTMLSelectElement;
  const banner = root.querySelector('[data-role=error-banner]') as HTMLElement;
  const chartHost = root.querySelector('[data-role=chart-host]') as HTMLElement;
  const meta = root.querySelector('[data-role=forecast-meta]') as HTMLElement;

  kindSelect.value = options.state.kind;

  void fetchRegions()
    .then((payload) => {
      for (const region of payload.regions) {
        const option = document.createElement('option');
        option.value = region.code;
        option.textContent = `${region.name} (${region.code})`;
        regionSelect.appendChild(option);
      }
      if (options.state.region) {
        regionSelect.value = options.state.region;
        void load();
      }
    })
    .catch((err: unknown) => showError(err));

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void load();
  });

  function showError(err: unknown): void {
    banner.hidden = false;
    banner.textContent =
      err instanceof ApiError ? `${err.message} [${err.code}]` : String(err);
  }

  async function load(): Promise<void> {
    banner.hidden = true;
    const region = regionSelect.value || options.state.region;
    const kind = kindSelect.value as SeriesKind;
    if (!region) {
      showError(new ApiError('missing_region', 'pick a region first'));
      return;
    }
    options.onStateChange({ tab: 'prediction', region, kind });
    try {
      const payload = await fetchForecast(region, kind);
      chartHost.replaceChildren(
        renderChart({ observed: payload.observed, forecast: payload.points }),
      );
      meta.textContent =
        `${payload.kind} forecast for ${payload.region.name}: ` +
        `${payload.points.length} days from ${payload.points[0]?.date ?? '-'}`;
    } catch (err) {
      if ((err as Error).name === 'AbortError') return;
      chartHost.replaceChildren();
      meta.textContent = '';
      showError(err);
    }
  }
}
