// Wire types, one to one with the JSON the service emits. The UI never
// derives analytics of its own: everything drawn traces back to a field here.

export type Sign = "positive" | "negative";
export type DetailKind = "difference" | "original";
export type Criterion = "avgChange" | "changedEdgeCount";

export interface DatasetHandle {
  id: string;
  name: string;
  nodeCount: number;
  timesliceCount: number;
  createdAt: string;
}

export interface OverviewCell {
  node: string;
  transitionIndex: number;
  posCount: number;
  negCount: number;
  avgChange: number;
  avgPos: number;
  avgNeg: number;
}

export interface OverviewPayload {
  version: number;
  nodeOrder: string[];
  transitions: number[];
  cells: OverviewCell[][]; // rows follow nodeOrder, columns follow transitions
}

export interface OrderingPayload {
  alpha: number | null;
  permutation: string[];
  objective: number;
}

export interface StackedBar {
  t: number;
  posEdges: number;
  negEdges: number;
}

export interface AreaPoint {
  node: string;
  changedEdges: number;
}

export interface ChartsPayload {
  version: number;
  stackedBars: StackedBar[];
  areaPerNode: AreaPoint[];
}

export interface OverviewResponse {
  version: number;
  overview: OverviewPayload;
  ordering: OrderingPayload;
  charts: ChartsPayload;
}

export interface DetailPayload {
  version: number;
  kind: DetailKind;
  timeIndex: number;
  nodeOrder: string[];
  values: number[][];
}

export interface Highlight {
  node: string;
  transitionIndex: number;
  sign: Sign;
}

export interface WithinColumnPath {
  kind: "withinColumn";
  column: number;
  sign: Sign;
  nodes: string[];
}

export interface CrossColumnPath {
  kind: "crossColumn";
  node: string;
  fromColumn: number;
  fromSign: Sign;
  toColumn: number;
  toSign: Sign;
}

export type MaskPath = WithinColumnPath | CrossColumnPath;

export interface MaskPayload {
  version: number;
  criterion: Criterion;
  threshold: number;
  gapLimit: number;
  highlights: Highlight[];
  paths: MaskPath[];
}

export interface TimelinePoint {
  t: number;
  offset: number;
  intensity: number;
  label: string;
}

export type TimelinePayload = TimelinePoint[];

export interface ApiError {
  code: string;
  message: string;
  details: unknown;
}
