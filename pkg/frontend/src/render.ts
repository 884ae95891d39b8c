import { edgeStroke, paint, RELATE_INCOMING, RELATE_OUTGOING, SELECTION_HALO } from "./chrome.js";
import type { LayoutGraph } from "./types.js";
import type { Viewport } from "./viewport.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface SceneHandlers {
  onNodeClick?: (id: string) => void;
  onBackgroundClick?: () => void;
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

/**
 * Draws one laid-out graph into an <svg>. Fills, outlines, positions and
 * shades come from the payload untouched; the scene only adds the
 * interaction layer: hover weights, selection halo, relate coloring.
 */
export class GraphScene {
  private layer: SVGGElement;
  private edgeGroups: SVGGElement[] = [];
  private nodeRects = new Map<string, SVGRectElement>();
  private centers = new Map<string, { x: number; y: number }>();
  private graph: LayoutGraph | null = null;

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly handlers: SceneHandlers = {},
  ) {
    this.layer = el("g", { "data-role": "viewport" }) as SVGGElement;
    this.svg.appendChild(this.layer);
    this.svg.addEventListener("click", (event) => {
      if (event.target === this.svg) this.handlers.onBackgroundClick?.();
    });
  }

  get current(): LayoutGraph | null {
    return this.graph;
  }

  nodeCenter(id: string): { x: number; y: number } | null {
    return this.centers.get(id) ?? null;
  }

  applyViewport(viewport: Viewport): void {
    this.layer.setAttribute("transform", viewport.transformAttribute());
  }

  draw(graph: LayoutGraph): void {
    this.graph = graph;
    this.layer.textContent = "";
    this.edgeGroups = [];
    this.nodeRects.clear();
    this.centers.clear();
    for (const node of graph.nodes) {
      this.centers.set(node.id, { x: node.x, y: node.y });
    }

    const edgeLayer = el("g", { "data-role": "edges" });
    for (const edge of graph.edges) {
      const a = this.centers.get(edge.from);
      const b = this.centers.get(edge.to);
      if (!a || !b) continue;
      const group = el("g", {
        "data-from": edge.from,
        "data-to": edge.to,
        "data-shade": String(edge.shade),
      }) as SVGGElement;
      group.appendChild(
        el("line", {
          x1: String(a.x),
          y1: String(a.y),
          x2: String(b.x),
          y2: String(b.y),
          stroke: edgeStroke(edge.shade),
          "stroke-width": "1.5",
        }),
      );
      // weight shown on demand only
      const weight = el("text", {
        x: String((a.x + b.x) / 2),
        y: String((a.y + b.y) / 2 - 4),
        visibility: "hidden",
        "data-role": "edge-weight",
        "font-size": "11",
      });
      weight.textContent = edge.frequency.toFixed(2);
      group.appendChild(weight);
      group.addEventListener("mouseenter", () => weight.setAttribute("visibility", "visible"));
      group.addEventListener("mouseleave", () => weight.setAttribute("visibility", "hidden"));
      edgeLayer.appendChild(group);
      this.edgeGroups.push(group);
    }
    this.layer.appendChild(edgeLayer);

    const nodeLayer = el("g", { "data-role": "nodes" });
    for (const node of graph.nodes) {
      const group = el("g", { "data-id": node.id, "data-zone": node.zone }) as SVGGElement;
      const rect = el("rect", {
        x: String(node.x - node.w / 2),
        y: String(node.y - node.h / 2),
        width: String(node.w),
        height: String(node.h),
        rx: "6",
        fill: paint(node.fill),
        stroke: paint(node.outline),
        "stroke-width": "2",
        "data-outline": paint(node.outline),
      }) as SVGRectElement;
      group.appendChild(rect);
      const text = el("text", {
        x: String(node.x),
        y: String(node.y + 4),
        "text-anchor": "middle",
        "font-size": "12",
      });
      text.textContent = node.label;
      group.appendChild(text);
      group.addEventListener("click", () => this.handlers.onNodeClick?.(node.id));
      nodeLayer.appendChild(group);
      this.nodeRects.set(node.id, rect);
    }
    this.layer.appendChild(nodeLayer);
  }

  /**
   * Color the selected state's arcs: outgoing purple, incoming light
   * blue. Passing null restores every edge to its grayscale shade.
   */
  relate(selectedId: string | null): void {
    for (const group of this.edgeGroups) {
      const line = group.querySelector("line");
      if (!line) continue;
      const from = group.getAttribute("data-from");
      const to = group.getAttribute("data-to");
      const shade = Number(group.getAttribute("data-shade"));
      if (selectedId !== null && from === selectedId) {
        line.setAttribute("stroke", RELATE_OUTGOING);
      } else if (selectedId !== null && to === selectedId) {
        line.setAttribute("stroke", RELATE_INCOMING);
      } else {
        line.setAttribute("stroke", edgeStroke(shade));
      }
    }
    for (const [id, rect] of this.nodeRects) {
      if (id === selectedId) {
        rect.setAttribute("stroke", SELECTION_HALO);
        rect.setAttribute("stroke-width", "3");
      } else {
        rect.setAttribute("stroke", rect.getAttribute("data-outline") ?? "");
        rect.setAttribute("stroke-width", "2");
      }
    }
  }
}
