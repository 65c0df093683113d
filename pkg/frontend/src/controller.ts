import { ApiClient, StaleGuard, type MaskParams, type OverviewParams } from "./api.js";
import {
  buildOverviewScene,
  foldDetail,
  overlayMask,
  unfoldDetail,
  type MaskLayer,
  type OverviewScene,
} from "./scene.js";
import {
  brushRange,
  clearBrush,
  initialState,
  markFolded,
  markUnfolded,
  setAlpha,
  setMaskConfig,
  setMaskEnabled,
  type MaskConfig,
  type ViewState,
} from "./state.js";
import type { DetailKind, MaskPayload, OverviewResponse, TimelinePayload } from "./types.js";

export type Warn = (message: string) => void;

// Owns the view state and keeps the scene in sync with the service.
// Every interaction funnels through here; rendering stays a pure function
// of (scene, maskLayer, timeline).
export class Explorer {
  state: ViewState = initialState();
  scene: OverviewScene | null = null;
  overview: OverviewResponse | null = null;
  mask: MaskPayload | null = null;
  timeline: TimelinePayload | null = null;
  maxTransition = 0;

  private guard = new StaleGuard();

  constructor(private api: ApiClient, private warn: Warn = (m) => console.warn(m)) {}

  async load(datasetId: string): Promise<void> {
    this.state = { ...initialState(), datasetId };
    this.timeline = await this.api.getTimeline(datasetId);
    this.maxTransition = Math.max(1, this.timeline.length - 1);
    await this.refresh();
  }

  private overviewParams(): OverviewParams {
    const p: OverviewParams = { alpha: this.state.alpha };
    if (this.state.brushedRange) {
      p.from = this.state.brushedRange[0];
      p.to = this.state.brushedRange[1];
    }
    return p;
  }

  private maskParams(): MaskParams {
    const cfg = this.state.maskConfig;
    const p: MaskParams = {
      criterion: cfg.criterion,
      threshold: cfg.threshold,
      gap: cfg.gapLimit,
    };
    if (this.state.brushedRange) {
      p.from = this.state.brushedRange[0];
      p.to = this.state.brushedRange[1];
    }
    return p;
  }

  // Refetch overview and mask for the current state; responses that lost a
  // race against a newer interaction are dropped.
  async refresh(): Promise<void> {
    const id = this.state.datasetId;
    if (!id) return;
    const token = this.guard.begin("views");
    const [overview, mask] = await Promise.all([
      this.api.getOverview(id, this.overviewParams()),
      this.api.getMask(id, this.maskParams()),
    ]);
    if (!this.guard.isCurrent("views", token)) return;

    this.overview = overview;
    this.mask = mask;
    let scene = buildOverviewScene(overview);

    // carry unfolded matrices across the refetch where they still fit
    const visible = new Set(overview.overview.transitions);
    const kept: Array<[number, DetailKind]> = [];
    for (const [t, kind] of this.state.unfolded) {
      if (!visible.has(t)) continue;
      const payload = await this.api.getDetail(id, t, kind);
      if (!this.guard.isCurrent("views", token)) return;
      scene = unfoldDetail(scene, payload, this.warn);
      kept.push([t, kind]);
    }
    this.state = { ...this.state, unfolded: kept };
    this.scene = scene;
  }

  async brush(a: number, b: number): Promise<void> {
    this.state = brushRange(this.state, a, b, this.maxTransition);
    await this.refresh();
  }

  async resetBrush(): Promise<void> {
    this.state = clearBrush(this.state);
    await this.refresh();
  }

  async changeAlpha(alpha: number): Promise<void> {
    const next = setAlpha(this.state, alpha);
    if (next.alpha === this.state.alpha) return; // detent absorbed the move
    this.state = next;
    await this.refresh();
  }

  async changeMaskConfig(cfg: Partial<MaskConfig>): Promise<void> {
    this.state = setMaskConfig(this.state, cfg);
    await this.refresh();
  }

  toggleMask(on: boolean): void {
    this.state = setMaskEnabled(this.state, on);
  }

  async unfold(timeIndex: number, kind: DetailKind): Promise<void> {
    const scene = this.scene;
    const id = this.state.datasetId;
    if (!scene || !id) return;
    if (!scene.columns.some((c) => c.transition === timeIndex)) {
      this.warn(`cannot unfold t=${timeIndex}: not a displayed column`);
      return;
    }
    if (this.state.unfolded.some(([t, k]) => t === timeIndex && k === kind)) return;
    const payload = await this.api.getDetail(id, timeIndex, kind);
    const next = unfoldDetail(scene, payload, this.warn);
    if (next === scene) return; // builder refused, warning already emitted
    this.scene = next;
    this.state = markUnfolded(this.state, timeIndex, kind);
  }

  fold(timeIndex: number, kind: DetailKind): void {
    if (!this.scene) return;
    this.scene = foldDetail(this.scene, timeIndex, kind);
    this.state = markFolded(this.state, timeIndex, kind);
  }

  maskLayer(): MaskLayer | null {
    if (!this.scene || !this.mask) return null;
    return overlayMask(this.scene, this.mask, this.state.maskEnabled);
  }
}
