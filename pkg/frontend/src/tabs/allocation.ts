/**
 * Allocation tab: pick an item, enter per-unit demands and the total
 * supply, and render the award table returned by the back end. All fields
 * validate client-side before any request is sent.
 */

import { ApiError, postAllocate } from '../api';
import { fmt1, parseNonNegative } from '../format';

const DEFAULT_ITEMS = ['oxygen', 'ventilator', 'remdesivir'];

export function initAllocationTab(root: HTMLElement): void {
  root.innerHTML = `
    <form data-role="allocation-form">
      <label>Item
        <select data-role="item-select">
          ${DEFAULT_ITEMS.map((i) => `<option value="${i}">${i}</option>`).join('')}
        </select>
      </label>
      <label>Total supply
        <input data-role="supply-input" type="text" inputmode="decimal">
      </label>
      <span data-role="supply-error" class="field-error" hidden></span>
      <table data-role="claims-table">
        <thead><tr><th>Unit</th><th>Demand</th><th></th></tr></thead>
        <tbody data-role="claims-body"></tbody>
      </table>
      <button type="button" data-role="add-row">Add unit</button>
      <button type="submit" data-role="submit">Allocate</button>
    </form>
    <div data-role="error-banner" class="banner error" hidden></div>
    <div data-role="result-host"></div>
  `;

  const form = root.querySelector('[data-role=allocation-form]') as HTMLFormElement;
  const itemSelect = root.querySelector('[data-role=item-select]') as HTMLSelectElement;
  const supplyInput = root.querySelector('[data-role=supply-input]') as HTMLInputElement;
  const supplyError = root.querySelector('[data-role=supply-error]') as HTMLElement;
  const claimsBody = root.querySelector('[data-role=claims-body]') as HTMLElement;
  const addRow = root.querySelector('[data-role=add-row]') as HTMLButtonElement;
  const banner = root.querySelector('[data-role=error-banner]') as HTMLElement;
  const resultHost = root.querySelector('[data-role=result-host]') as HTMLElement;

  function appendClaimRow(unit = '', demand = ''): void {
    const row = document.createElement('tr');
    row.dataset.role = 'claim-row';
    row.innerHTML = `
      <td><input data-role="unit-input" type="text" value="${unit}"></td>
      <td><input data-role="demand-input" type="text" inputmode="decimal" value="${demand}">
          <span data-role="demand-error" class="field-error" hidden></span></td>
      <td><button type="button" data-role="remove-row">x</button></td>
    `;
    (row.querySelector('[data-role=remove-row]') as HTMLButtonElement)
      .addEventListener('click', () => row.remove());
    claimsBody.appendChild(row);
  }

  addRow.addEventListener('click', () => appendClaimRow());
  appendClaimRow();

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void submit();
  });

  function validate(): { supply: number; claims: { unit: string; demand: number }[] } | null {
    let valid = true;

    const supply = parseNonNegative(supplyInput.value);
    supplyError.hidden = supply !== null;
    if (supply === null) {
      supplyError.textContent = 'supply must be a non-negative number';
      valid = false;
    }

    const claims: { unit: string; demand: number }[] = [];
    const rows = claimsBody.querySelectorAll('[data-role=claim-row]');
    for (const row of rows) {
      const unitInput = row.querySelector('[data-role=unit-input]') as HTMLInputElement;
      const demandInput = row.querySelector('[data-role=demand-input]') as HTMLInputElement;
      const demandError = row.querySelector('[data-role=demand-error]') as HTMLElement;
      const demand = parseNonNegative(demandInput.value);
      const unit = unitInput.value.trim();
      const rowValid = demand !== null && unit !== '';
      demandError.hidden = rowValid;
      if (!rowValid) {
        demandError.textContent =
          unit === '' ? 'unit code required' : 'demand must be a non-negative number';
        valid = false;
      } else {
        claims.push({ unit, demand });
      }
    }
    if (claims.length === 0) valid = false;
    return valid && supply !== null ? { supply, claims } : null;
  }

  async function submit(): Promise<void> {
    banner.hidden = true;
    const parsed = validate();
    if (parsed === null) return; // field-level messages shown, no request sent
    try {
      const payload = await postAllocate({
        item: itemSelect.value,
        supply: parsed.supply,
        claims: parsed.claims,
      });
      renderResult(payload);
    } catch (err) {
      if ((err as Error).name === 'AbortError') return;
      resultHost.replaceChildren();
      banner.hidden = false;
      banner.textContent =
        err instanceof ApiError ? `${err.message} [${err.code}]` : String(err);
    }
  }

  function renderResult(payload: import('../types').AllocationPayload): void {
    const rows = payload.awards
      .map(
        (row) => `
        <tr data-role="award-row">
          <td>${row.unit}</td>
          <td>${fmt1(row.demand)}</td>
          <td>${fmt1(row.peak_active)}</td>
          <td data-role="award-cell">${fmt1(row.award)}</td>
        </tr>`,
      )
      .join('');
    resultHost.innerHTML = `
      <table data-role="award-table">
        <thead>
          <tr><th>Unit</th><th>Demand</th><th>Peak active (7d)</th>
              <th>Award (${payload.item.unit})</th></tr>
        </thead>
        <tbody>${rows}</tbody>
        <tfoot>
          <tr data-role="sum-row">
            <td>Total</td><td></td><td></td>
            <td data-role="award-sum">${fmt1(payload.total_awarded)}</td>
          </tr>
        </tfoot>
      </table>
    `;
  }
}
