import type { Criterion, DetailKind } from "./types.js";

export interface MaskConfig {
  criterion: Criterion;
  threshold: number;
  gapLimit: number;
}

export interface ViewState {
  datasetId: string | null;
  // transition-index bounds, inclusive; null means the full range
  brushedRange: [number, number] | null;
  alpha: number;
  unfolded: Array<[number, DetailKind]>;
  maskConfig: MaskConfig;
  maskEnabled: boolean;
}

export const ALPHA_DETENTS = [0, 0.5, 1];
const DETENT_RADIUS = 0.03;

export function initialState(): ViewState {
  return {
    datasetId: null,
    brushedRange: null,
    alpha: 0.5,
    unfolded: [],
    maskConfig: { criterion: "avgChange", threshold: 1.0, gapLimit: 3 },
    maskEnabled: true,
  };
}

// Reversed drags normalize to (min, max); bounds clamp to the dataset's
// transition range [1, maxTransition].
export function brushRange(
  state: ViewState,
  a: number,
  b: number,
  maxTransition: number
): ViewState {
  let from = Math.min(a, b);
  let to = Math.max(a, b);
  from = Math.max(1, Math.round(from));
  to = Math.min(maxTransition, Math.round(to));
  if (from > to) [from, to] = [to, to];
  return { ...state, brushedRange: [from, to] };
}

export function clearBrush(state: ViewState): ViewState {
  return { ...state, brushedRange: null };
}

// The slider is continuous but sticks to 0, 0.5 and 1 when close.
export function setAlpha(state: ViewState, alpha: number): ViewState {
  let a = Math.min(1, Math.max(0, alpha));
  for (const detent of ALPHA_DETENTS) {
    if (Math.abs(a - detent) <= DETENT_RADIUS) {
      a = detent;
      break;
    }
  }
  return { ...state, alpha: a };
}

export function setMaskEnabled(state: ViewState, on: boolean): ViewState {
  return { ...state, maskEnabled: on };
}

export function setMaskConfig(state: ViewState, cfg: Partial<MaskConfig>): ViewState {
  return { ...state, maskConfig: { ...state.maskConfig, ...cfg } };
}

export function markUnfolded(
  state: ViewState,
  timeIndex: number,
  kind: DetailKind
): ViewState {
  if (state.unfolded.some(([t, k]) => t === timeIndex && k === kind)) return state;
  return { ...state, unfolded: [...state.unfolded, [timeIndex, kind]] };
}

export function markFolded(
  state: ViewState,
  timeIndex: number,
  kind: DetailKind
): ViewState {
  const kept = state.unfolded.filter(([t, k]) => !(t === timeIndex && k === kind));
  if (kept.length === state.unfolded.length) return state;
  return { ...state, unfolded: kept };
}
