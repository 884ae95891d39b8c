// Payload shapes of the tutorlens HTTP API. The client renders these
// verbatim: frequencies, zones and colors are all computed server-side.

export type Rgb = [number, number, number];

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  w: number;
  h: number;
  fill: Rgb;
  outline: Rgb;
  label: string;
  zone: string;
  frequency: number;
}

export interface LayoutEdge {
  from: string;
  to: string;
  shade: number;
  frequency: number;
  event_label: string;
}

export interface LayoutGraph {
  assignment_id: string;
  n_students: number;
  width: number;
  height: number;
  bands: Record<string, [number, number]>;
  nodes: LayoutNode[];
  edges: LayoutEdge[];
}

export interface DateViewGraph extends LayoutGraph {
  window: { from: string | null; to: string | null };
}

export interface TraceStep {
  state: string;
  event: string;
  timestamp: string;
}

export interface TraceGraph extends LayoutGraph {
  student_id: string;
  steps: TraceStep[];
}

export interface ModelInfo {
  model_id: string;
  assignment_id: string;
  corpus_id: string;
  method: string;
  feature: string;
  k: number;
  n_students: number;
  built_at: string;
}

export interface ClusterInfo {
  index: number;
  n_students: number;
  n_states: number;
  n_edges: number;
  mean_error_coefficient: number;
}

export interface SearchMatch {
  id: string;
  label: string;
  zone: string;
  kind: string;
  frequency: number;
}

export interface ArcRecord {
  from: string;
  to: string;
  label: string;
  count: number;
  frequency: number;
}

export interface StateDetail {
  id: string;
  label: string;
  zone: string;
  kind: string;
  validated: string;
  blamed: string | null;
  anchor: number;
  member_count: number;
  count: number;
  frequency: number;
  students: string[];
  description: string | null;
  tutoring_message: string | null;
  incoming: ArcRecord[];
  outgoing: ArcRecord[];
}

export interface FilterSpec {
  minNodeFreq: number;
  minEdgeFreq: number;
}

export type ViewMode =
  | { mode: "global" }
  | { mode: "per-date"; from: string; to: string }
  | { mode: "per-student"; studentId: string };

export interface ViewState {
  modelId: string;
  cluster: number;
  viewport: { offsetX: number; offsetY: number; scale: number };
  filter: FilterSpec;
  selected: string | null;
  view: ViewMode;
}
