import { afterEach, describe, expect, it, vi } from 'vitest';

import { initAllocationTab } from '../src/tabs/allocation';
import type { AllocationPayload } from '../src/types';
import { flush, installFetchStub, okRoute } from './stubApi';

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = '';
});

function allocationStub(body: unknown): AllocationPayload {
  const req = body as {
    item: string;
    supply: number;
    claims: { unit: string; demand: number }[];
  };
  // fixed shares resembling the service's output for the oxygen scenario
  const awards = [1072.0, 789.8, 1185.3, 152.9];
  return {
    item: { name: req.item, unit: 'MT', kappa: 0.005 },
    supply: req.supply,
    blend: 0.5,
    awards: req.claims.map((claim, i) => ({
      unit: claim.unit,
      name: claim.unit,
      demand: claim.demand,
      peak_active: 1000 * (i + 1),
      peak_active_source: 'forecast',
      effective_demand: claim.demand,
      award: awards[i] ?? 0,
    })),
    total_awarded: awards
      .slice(0, req.claims.length)
      .reduce((total, award) => total + award, 0),
    exhausted: true,
  };
}

function mount(): HTMLElement {
  const host = document.createElement('div');
  document.body.appendChild(host);
  initAllocationTab(host);
  return host;
}

function setRows(host: HTMLElement, rows: [string, string][]): void {
  const addRow = host.querySelector('[data-role=add-row]') as HTMLButtonElement;
  for (let i = 1; i < rows.length; i++) addRow.click();
  const rowEls = host.querySelectorAll('[data-role=claim-row]');
  rows.forEach(([unit, demand], i) => {
    (rowEls[i].querySelector('[data-role=unit-input]') as HTMLInputElement).value = unit;
    (rowEls[i].querySelector('[data-role=demand-input]') as HTMLInputElement).value = demand;
  });
}

function submit(host: HTMLElement): void {
  (host.querySelector('[data-role=allocation-form]') as HTMLFormElement).dispatchEvent(
    new Event('submit', { cancelable: true }),
  );
}

describe('allocation tab', () => {
  it('renders the oxygen scenario with a 3200.0 sum row', async () => {
    const calls = installFetchStub([
      okRoute((url, method) => url === '/allocate' && method === 'POST', allocationStub),
    ]);
    const host = mount();
    (host.querySelector('[data-role=supply-input]') as HTMLInputElement).value = '3200';
    setRows(host, [['KA', '2000'], ['MH', '1000'], ['TN', '1200'], ['DL', '300']]);
    submit(host);
    await flush();

    expect(calls).toHaveLength(1);
    expect(calls[0].body).toEqual({
      item: 'oxygen',
      supply: 3200,
      claims: [
        { unit: 'KA', demand: 2000 },
        { unit: 'MH', demand: 1000 },
        { unit: 'TN', demand: 1200 },
        { unit: 'DL', demand: 300 },
      ],
    });
    const sum = host.querySelector('[data-role=award-sum]') as HTMLElement;
    expect(sum.textContent).toBe('3200.0');
    expect(host.querySelectorAll('[data-role=award-row]')).toHaveLength(4);
  });

  it('award column rounds to one decimal for display', async () => {
    installFetchStub([
      okRoute((url) => url === '/allocate', allocationStub),
    ]);
    const host = mount();
    (host.querySelector('[data-role=supply-input]') as HTMLInputElement).value = '3200';
    setRows(host, [['KA', '2000'], ['MH', '1000']]);
    submit(host);
    await flush();
    const cells = [...host.querySelectorAll('[data-role=award-cell]')].map(
      (cell) => cell.textContent,
    );
    expect(cells).toEqual(['1072.0', '789.8']);
  });

  it('blocks negative demand with a field message and sends nothing', async () => {
    const calls = installFetchStub([
      okRoute((url) => url === '/allocate', allocationStub),
    ]);
    const host = mount();
    (host.querySelector('[data-role=supply-input]') as HTMLInputElement).value = '500';
    setRows(host, [['KA', '-10']]);
    submit(host);
    await flush();

    expect(calls).toHaveLength(0);
    const fieldError = host.querySelector('[data-role=demand-error]') as HTMLElement;
    expect(fieldError.hidden).toBe(false);
    expect(fieldError.textContent).toContain('non-negative');
  });

  it('single unit with slack supply awards the demand', async () => {
    installFetchStub([
      okRoute((url) => url === '/allocate', (body) => {
        const req = body as { supply: number; claims: { unit: string; demand: number }[] };
        return {
          item: { name: 'oxygen', unit: 'MT', kappa: 0.005 },
          supply: req.supply,
          blend: 0.5,
          awards: req.claims.map((claim) => ({
            unit: claim.unit,
            name: claim.unit,
            demand: claim.demand,
            peak_active: 0,
            peak_active_source: 'none',
            effective_demand: claim.demand,
            award: claim.demand,
          })),
          total_awarded: req.claims[0].demand,
          exhausted: false,
        };
      }),
    ]);
    const host = mount();
    (host.querySelector('[data-role=supply-input]') as HTMLInputElement).value = '500';
    setRows(host, [['KA', '300']]);
    submit(host);
    await flush();
    const sum = host.querySelector('[data-role=award-sum]') as HTMLElement;
    expect(sum.textContent).toBe('300.0');
  });
});
