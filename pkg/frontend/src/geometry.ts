import type { LayoutEdge, LayoutNode } from "./types.js";

// Hits within this many pixels still count, so thin edges stay clickable.
export const HIT_TOLERANCE = 4;

export function pointToSegmentDistance(
  px: number,
  py: number,
  x1: number,
  y1: number,
  x2: number,
  y2: number,
): number {
  const dx = x2 - x1;
  const dy = y2 - y1;
  const lengthSq = dx * dx + dy * dy;
  if (lengthSq === 0) return Math.hypot(px - x1, py - y1);
  let t = ((px - x1) * dx + (py - y1) * dy) / lengthSq;
  t = Math.max(0, Math.min(1, t));
  return Math.hypot(px - (x1 + t * dx), py - (y1 + t * dy));
}

export function nodeContains(node: LayoutNode, x: number, y: number): boolean {
  return (
    Math.abs(x - node.x) <= node.w / 2 + HIT_TOLERANCE &&
    Math.abs(y - node.y) <= node.h / 2 + HIT_TOLERANCE
  );
}

/** Topmost node under the point, or null. Later nodes draw on top. */
export function hitTestNodes(nodes: LayoutNode[], x: number, y: number): LayoutNode | null {
  for (let i = nodes.length - 1; i >= 0; i--) {
    if (nodeContains(nodes[i], x, y)) return nodes[i];
  }
  return null;
}

/** First edge whose segment passes within tolerance of the point. */
export function hitTestEdges(
  edges: LayoutEdge[],
  centers: Map<string, { x: number; y: number }>,
  x: number,
  y: number,
): LayoutEdge | null {
  for (const edge of edges) {
    const a = centers.get(edge.from);
    const b = centers.get(edge.to);
    if (!a || !b) continue;
    if (pointToSegmentDistance(x, y, a.x, a.y, b.x, b.y) <= HIT_TOLERANCE) {
      return edge;
    }
  }
  return null;
}
