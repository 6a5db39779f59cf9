// View state and its pure transitions. The invariants: the selected bin is
// always one of the dataset's bins, and open clouds are a subset of the
// sites currently on screen.

export interface ViewState {
  bins: string[];
  binIndex: number;
  openClouds: string[]; // site keys, insertion order
  sparklines: boolean;
  animating: boolean;
}

export function initialState(bins: string[]): ViewState {
  return { bins, binIndex: 0, openClouds: [], sparklines: false, animating: false };
}

export function currentBin(state: ViewState): string {
  return state.bins[state.binIndex];
}

export function siteKey(lat: number, lon: number): string {
  return `${lat},${lon}`;
}

export function withBin(state: ViewState, index: number): ViewState {
  const clamped = Math.max(0, Math.min(state.bins.length - 1, index));
  return { ...state, binIndex: clamped };
}

/** The bin to prefetch while a transition animates: one step onward. */
export function prefetchIndex(state: ViewState, previousIndex: number): number | null {
  const direction = Math.sign(state.binIndex - previousIndex) || 1;
  const next = state.binIndex + direction;
  return next >= 0 && next < state.bins.length ? next : null;
}

export function openCloud(state: ViewState, key: string): ViewState {
  if (state.openClouds.includes(key)) return state;
  return { ...state, openClouds: [...state.openClouds, key] };
}

export function closeCloud(state: ViewState, key: string): ViewState {
  return { ...state, openClouds: state.openClouds.filter((k) => k !== key) };
}

/** Enforce openClouds being a subset of the sites currently shown. */
export function pruneClouds(state: ViewState, visible: Set<string>): ViewState {
  const kept = state.openClouds.filter((k) => visible.has(k));
  return kept.length === state.openClouds.length ? state : { ...state, openClouds: kept };
}
