/**
 * Deep-linkable view state: the active tab, region and series kind
 * round-trip through the URL hash (#tab=prediction&region=KA&kind=active).
 */

import type { SeriesKind, TabName, ViewState } from './types';

const TABS: TabName[] = ['prediction', 'allocation', 'lockdown'];
const KINDS: SeriesKind[] = ['confirmed', 'recovered', 'deceased', 'active'];

export const DEFAULT_STATE: ViewState = {
  tab: 'prediction',
  region: '',
  kind: 'active',
};

export function parseHash(hash: string): ViewState {
  const params = new URLSearchParams(hash.replace(/^#/, ''));
  const tab = params.get('tab') as TabName | null;
  const kind = params.get('kind') as SeriesKind | null;
  return {
    tab: tab !== null && TABS.includes(tab) ? tab : DEFAULT_STATE.tab,
    region: params.get('region') ?? DEFAULT_STATE.region,
    kind: kind !== null && KINDS.includes(kind) ? kind : DEFAULT_STATE.kind,
  };
}

export function toHash(state: ViewState): string {
  const params = new URLSearchParams();
  params.set('tab', state.tab);
  if (state.region) params.set('region', state.region);
  params.set('kind', state.kind);
  return `#${params.toString()}`;
}

export function readState(): ViewState {
  return parseHash(window.location.hash);
}

export function writeState(state: ViewState): void {
  const hash = toHash(state);
  if (window.location.hash !== hash) {
    history.replaceState(null, '', hash);
  }
}
