/**
 * Tab shell: three client-side routed tabs (prediction, allocation,
 * lockdown) whose active tab and selections round-trip through the URL.
 */

import { initAllocationTab } from './tabs/allocation';
import { initLockdownTab } from './tabs/lockdownTab';
import { initPredictionTab } from './tabs/prediction';
import type { TabName, ViewState } from './types';
import { readState, writeState } from './urlState';

const TABS: TabName[] = ['prediction', 'allocation', 'lockdown'];

export function mountApp(root: HTMLElement): void {
  root.innerHTML = `
    <nav data-role="tab-bar">
      ${TABS.map(
        (tab) => `<button data-role="tab-button" data-tab="${tab}">${tab}</button>`,
      ).join('')}
    </nav>
    <main data-role="tab-panel"></main>
  `;
  const panel = root.querySelector('[data-role=tab-panel]') as HTMLElement;
  const buttons = root.querySelectorAll<HTMLButtonElement>('[data-role=tab-button]');

  let state: ViewState = readState();

  function activate(next: ViewState): void {
    state = next;
    writeState(state);
    for (const button of buttons) {
      button.classList.toggle('active', button.dataset.tab === state.tab);
    }
    panel.replaceChildren();
    const host = document.createElement('div');
    panel.appendChild(host);
    switch (state.tab) {
      case 'prediction':
        initPredictionTab(host, {
          state,
          onStateChange: (s) => {
            state = s;
            writeState(state);
          },
        });
        break;
      case 'allocation':
        initAllocationTab(host);
        break;
      case 'lockdown':
        initLockdownTab(host);
        break;
    }
  }

  for (const button of buttons) {
    button.addEventListener('click', () => {
      activate({ ...state, tab: button.dataset.tab as TabName });
    });
  }

  window.addEventListener('hashchange', () => {
    const next = readState();
    if (next.tab !== state.tab) activate(next);
  });

  activate(state);
}
