import { divergingColor, sequentialGray, signColor } from "./colors.js";
import type {
  DetailKind,
  DetailPayload,
  MaskPayload,
  OverviewResponse,
  Sign,
} from "./types.js";

// The scene is plain data: what to draw, not how. Render turns it into
// SVG, tests inspect it directly.

export interface CellGlyph {
  node: string;
  transition: number;
  empty: boolean;
  upperFraction: number; // posCount share of the tallest bar
  lowerFraction: number; // negCount share of the tallest bar
  color: string;
}

export interface DetailCell {
  row: string;
  col: string;
  value: number;
  color: string;
}

export interface DetailBlock {
  kind: DetailKind;
  timeIndex: number;
  nodeOrder: string[]; // always the scene's order, never the payload's
  cells: DetailCell[][];
}

export interface SceneColumn {
  transition: number;
  glyphs: CellGlyph[];
  details: DetailBlock[];
}

export interface OverviewScene {
  nodeOrder: string[];
  alpha: number | null;
  columns: SceneColumn[];
}

const NEUTRAL = "rgb(247,247,247)";

export function buildOverviewScene(resp: OverviewResponse): OverviewScene {
  const { nodeOrder, transitions, cells } = resp.overview;
  let maxCount = 0;
  let maxAbs = 0;
  for (const row of cells) {
    for (const cell of row) {
      maxCount = Math.max(maxCount, cell.posCount, cell.negCount);
      maxAbs = Math.max(maxAbs, Math.abs(cell.avgChange));
    }
  }
  const columns: SceneColumn[] = transitions.map((t, c) => ({
    transition: t,
    glyphs: nodeOrder.map((node, r) => {
      const cell = cells[r][c];
      const empty = cell.posCount + cell.negCount === 0;
      return {
        node,
        transition: t,
        empty,
        upperFraction: maxCount > 0 ? cell.posCount / maxCount : 0,
        lowerFraction: maxCount > 0 ? cell.negCount / maxCount : 0,
        color: empty || maxAbs === 0 ? NEUTRAL : divergingColor(cell.avgChange, maxAbs),
      };
    }),
    details: [],
  }));
  return { nodeOrder: [...nodeOrder], alpha: resp.ordering.alpha, columns };
}

function buildDetailBlock(
  payload: DetailPayload,
  nodeOrder: string[]
): DetailBlock | null {
  const index = new Map(payload.nodeOrder.map((n, i) => [n, i]));
  for (const node of nodeOrder) {
    if (!index.has(node)) return null; // different node universe, refuse
  }
  let extreme = 0;
  for (const row of payload.values) {
    for (const v of row) extreme = Math.max(extreme, Math.abs(v));
  }
  const paint = (v: number): string => {
    if (extreme === 0) return NEUTRAL;
    return payload.kind === "difference"
      ? divergingColor(v, extreme)
      : sequentialGray(Math.abs(v), extreme);
  };
  const cells = nodeOrder.map((rowNode) =>
    nodeOrder.map((colNode) => {
      const value = payload.values[index.get(rowNode)!][index.get(colNode)!];
      return { row: rowNode, col: colNode, value, color: paint(value) };
    })
  );
  return { kind: payload.kind, timeIndex: payload.timeIndex, nodeOrder: [...nodeOrder], cells };
}

export type Warn = (message: string) => void;

// Insert a detail matrix under its column, re-rowed to the scene's node
// order. Unknown column or mismatched node set: warn and return the scene
// unchanged (same reference, callers can test for no-op).
export function unfoldDetail(
  scene: OverviewScene,
  payload: DetailPayload,
  warn: Warn = console.warn
): OverviewScene {
  const at = scene.columns.findIndex((c) => c.transition === payload.timeIndex);
  if (at < 0) {
    warn(`detail t=${payload.timeIndex} is outside the displayed columns`);
    return scene;
  }
  if (
    scene.columns[at].details.some(
      (d) => d.timeIndex === payload.timeIndex && d.kind === payload.kind
    )
  ) {
    return scene; // already unfolded
  }
  const block = buildDetailBlock(payload, scene.nodeOrder);
  if (block === null) {
    warn(`detail t=${payload.timeIndex} does not cover the displayed nodes`);
    return scene;
  }
  const columns = scene.columns.map((col, i) =>
    i === at ? { ...col, details: [...col.details, block] } : { ...col, details: [...col.details] }
  );
  return { ...scene, columns };
}

export function foldDetail(
  scene: OverviewScene,
  timeIndex: number,
  kind: DetailKind
): OverviewScene {
  const columns = scene.columns.map((col) => ({
    ...col,
    details: col.details.filter((d) => !(d.timeIndex === timeIndex && d.kind === kind)),
  }));
  return { ...scene, columns };
}

export interface MaskRect {
  node: string;
  column: number;
  sign: Sign;
  color: string;
}

export interface VerticalConnector {
  kind: "vertical";
  column: number;
  sign: Sign;
  nodes: string[]; // in the scene's row order
  color: string;
}

export interface HorizontalConnector {
  kind: "horizontal";
  node: string;
  fromColumn: number;
  toColumn: number;
  fromSign: Sign;
  toSign: Sign;
  fromColor: string;
  toColor: string;
}

export type MaskConnector = VerticalConnector | HorizontalConnector;

export interface MaskLayer {
  rects: MaskRect[];
  connectors: MaskConnector[];
}

// null removes the layer entirely; the layer contains exactly one rect per
// highlight and one connector per path, so counts line up with the payload.
export function overlayMask(
  scene: OverviewScene,
  mask: MaskPayload,
  enabled: boolean
): MaskLayer | null {
  if (!enabled) return null;
  const rowOf = new Map(scene.nodeOrder.map((n, i) => [n, i]));
  const rank = (n: string) => rowOf.get(n) ?? scene.nodeOrder.length;

  const rects: MaskRect[] = mask.highlights.map((h) => ({
    node: h.node,
    column: h.transitionIndex,
    sign: h.sign,
    color: signColor(h.sign),
  }));

  const connectors: MaskConnector[] = mask.paths.map((p) => {
    if (p.kind === "withinColumn") {
      return {
        kind: "vertical" as const,
        column: p.column,
        sign: p.sign,
        nodes: [...p.nodes].sort((a, b) => rank(a) - rank(b)),
        color: signColor(p.sign),
      };
    }
    return {
      kind: "horizontal" as const,
      node: p.node,
      fromColumn: p.fromColumn,
      toColumn: p.toColumn,
      fromSign: p.fromSign,
      toSign: p.toSign,
      fromColor: signColor(p.fromSign),
      toColor: signColor(p.toSign),
    };
  });

  return { rects, connectors };
}
