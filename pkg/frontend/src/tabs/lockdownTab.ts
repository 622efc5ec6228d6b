/**
 * Lockdown tab: enter available amounts per critical item; the back end
 * checks 14-day predicted demand and returns the recommendation, shown as
 * a prominent banner plus a per-item breach table.
 */

import { ApiError, postLockdown } from '../api';
import { fmt1, parseNonNegative } from '../format';
import type { LockdownPayload } from '../types';

const DEFAULT_ITEMS = ['oxygen', 'ventilator', 'remdesivir'];

export function initLockdownTab(root: HTMLElement): void {
  root.innerHTML = `
    <form data-role="lockdown-form">
      <label>Region (blank = all)
        <input data-role="region-input" type="text">
      </label>
      <table>
        <thead><tr><th>Item</th><th>Available / day</th><th></th></tr></thead>
        <tbody data-role="availability-body"></tbody>
      </table>
      <button type="button" data-role="add-row">Add item</button>
      <button type="submit">Check</button>
    </form>
    <div data-role="error-banner" class="banner error" hidden></div>
    <div data-role="recommendation-banner" class="banner" hidden></div>
    <div data-role="breach-host"></div>
  `;

  const form = root.querySelector('[data-role=lockdown-form]') as HTMLFormElement;
  const regionInput = root.querySelector('[data-role=region-input]') as HTMLInputElement;
  const body = root.querySelector('[data-role=availability-body]') as HTMLElement;
  const addRow = root.querySelector('[data-role=add-row]') as HTMLButtonElement;
  const errorBanner = root.querySelector('[data-role=error-banner]') as HTMLElement;
  const banner = root.querySelector('[data-role=recommendation-banner]') as HTMLElement;
  const breachHost = root.querySelector('[data-role=breach-host]') as HTMLElement;

  function appendRow(item = DEFAULT_ITEMS[0], amount = ''): void {
    const row = document.createElement('tr');
    row.dataset.role = 'availability-row';
    row.innerHTML = `
      <td>
        <select data-role="item-select">
          ${DEFAULT_ITEMS.map(
            (i) => `<option value="${i}"${i === item ? ' selected' : ''}>${i}</option>`,
          ).join('')}
        </select>
      </td>
      <td><input data-role="amount-input" type="text" inputmode="decimal" value="${amount}">
          <span data-role="amount-error" class="field-error" hidden></span></td>
      <td><button type="button" data-role="remove-row">x</button></td>
    `;
    (row.querySelector('[data-role=remove-row]') as HTMLButtonElement)
      .addEventListener('click', () => row.remove());
    body.appendChild(row);
  }

  addRow.addEventListener('click', () => appendRow());
  appendRow();

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void submit();
  });

  async function submit(): Promise<void> {
    errorBanner.hidden = true;
    const availabilities: { item: string; available_per_day: number }[] = [];
    let valid = true;
    for (const row of body.querySelectorAll('[data-role=availability-row]')) {
      const item = (row.querySelector('[data-role=item-select]') as HTMLSelectElement).value;
      const amountInput = row.querySelector('[data-role=amount-input]') as HTMLInputElement;
      const amountError = row.querySelector('[data-role=amount-error]') as HTMLElement;
      const amount = parseNonNegative(amountInput.value);
      amountError.hidden = amount !== null;
      if (amount === null) {
        amountError.textContent = 'must be a non-negative number';
        valid = false;
      } else {
        availabilities.push({ item, available_per_day: amount });
      }
    }
    if (!valid || availabilities.length === 0) return;

    const request: { availabilities: typeof availabilities; region?: string } = {
      availabilities,
    };
    const region = regionInput.value.trim();
    if (region !== '') request.region = region;

    try {
      render(await postLockdown(request));
    } catch (err) {
      if ((err as Error).name === 'AbortError') return;
      banner.hidden = true;
      breachHost.replaceChildren();
      errorBanner.hidden = false;
      errorBanner.textContent =
        err instanceof ApiError ? `${err.message} [${err.code}]` : String(err);
    }
  }

  function render(payload: LockdownPayload): void {
    const lockdown = payload.recommendation === 'lockdown';
    banner.hidden = false;
    banner.textContent = lockdown ? 'LOCKDOWN' : 'NO LOCKDOWN';
    banner.className = `banner ${lockdown ? 'lockdown' : 'no-lockdown'}`;

    const sections = payload.items
      .map((entry) => {
        const rows = entry.breaches
          .map(
            (b) => `
            <tr data-role="breach-row" data-day="${b.day}">
              <td>${entry.item.name}</td><td>${b.date}</td><td>${b.day}</td>
              <td>${fmt1(b.forecast_demand)}</td><td>${fmt1(b.availability)}</td>
            </tr>`,
          )
          .join('');
        return rows || '';
      })
      .join('');
    breachHost.innerHTML = sections
      ? `
      <table data-role="breach-table">
        <thead>
          <tr><th>Item</th><th>Date</th><th>Day</th>
              <th>Forecast demand</th><th>Available</th></tr>
        </thead>
        <tbody>${sections}</tbody>
      </table>`
      : '<p data-role="no-breaches">No breach days within the horizon.</p>';
  }
}
