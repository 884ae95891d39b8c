import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Viewer } from "../src/app.js";
import { RELATE_INCOMING, RELATE_OUTGOING, SELECTION_HALO } from "../src/chrome.js";
import type {
  ClusterInfo,
  LayoutGraph,
  ModelInfo,
  StateDetail,
} from "../src/types.js";
import { fakeFetch, fixture, flushMicrotasks, type Router } from "./helpers.js";

const models = fixture<ModelInfo[]>("models");
const clusters = fixture<ClusterInfo[]>("clusters");
const graphT0 = fixture<LayoutGraph>("graph_t0");
const graphT30 = fixture<LayoutGraph>("graph_t30");
const graphT60 = fixture<LayoutGraph>("graph_t60");
const dateviewFull = fixture<LayoutGraph>("dateview_full");
const dateviewEarly = fixture<LayoutGraph>("dateview_early");
const tracePerfect = fixture<LayoutGraph & { student_id: string }>("trace_perfect");
const detail = fixture<StateDetail>("state_detail");

const modelId = models[0].model_id;

// One fake server over the single-cluster store fixtures. Graphs are keyed
// by the node threshold; anything off the captured grid plays a 500 so the
// banner path can be exercised too.
function singleClusterRouter(): Router {
  const graphs: Record<string, LayoutGraph> = { "0": graphT0, "30": graphT30, "60": graphT60 };
  return (url) => {
    const path = decodeURIComponent(url.pathname);
    if (path === "/models") return { status: 200, body: models };
    if (path === `/models/${modelId}/clusters`) return { status: 200, body: clusters };
    if (path === `/models/${modelId}/clusters/0/graph`) {
      const body = graphs[url.searchParams.get("min_node_freq") ?? ""];
      if (!body) return { status: 500, body: { detail: { code: "graph_failed", message: "boom" } } };
      return { status: 200, body };
    }
    if (path === `/models/${modelId}/date-view`) {
      return { status: 200, body: url.searchParams.has("to") ? dateviewEarly : dateviewFull };
    }
    if (path === `/models/${modelId}/students/s001/trace`) {
      return { status: 200, body: tracePerfect };
    }
    const statePrefix = `/models/${modelId}/clusters/0/states/`;
    if (path.startsWith(statePrefix)) {
      const id = path.slice(statePrefix.length);
      if (id === detail.id) return { status: 200, body: detail };
      return { status: 404, body: fixture("error_state_404") };
    }
    return undefined;
  };
}

async function bootViewer(router: Router) {
  const { fetchFn, calls } = fakeFetch(router);
  const root = document.createElement("div");
  const viewer = new Viewer(root, new ApiClient("", fetchFn), { width: 1200, height: 800 });
  await viewer.init();
  return { viewer, root, calls };
}

function drawnIds(viewer: Viewer): string[] {
  return [...viewer.svg.querySelectorAll("g[data-id]")].map((g) => g.getAttribute("data-id")!);
}

function setSlider(viewer: Viewer, value: string): void {
  const slider = viewer.filters.element.querySelector<HTMLInputElement>(
    '[data-role="node-slider"]',
  )!;
  slider.value = value;
  slider.dispatchEvent(new Event("input"));
}

describe("Viewer", () => {
  it("boots from the model list and draws the default cluster", async () => {
    const { viewer, calls } = await bootViewer(singleClusterRouter());
    expect(viewer.state.modelId).toBe(modelId);
    expect(drawnIds(viewer).length).toBe(graphT0.nodes.length);
    expect(viewer.tabs.element.querySelectorAll("button").length).toBe(1);
    expect(viewer.banner.hidden).toBe(true);
    expect(calls.map((c) => c.url.pathname).slice(0, 3)).toEqual([
      "/models",
      `/models/${modelId}/clusters`,
      `/models/${modelId}/clusters/0/graph`,
    ]);
    expect(calls[2].url.searchParams.get("min_node_freq")).toBe("0");
  });

  it("refetches a sparser graph when the node threshold rises", async () => {
    const { viewer, calls } = await bootViewer(singleClusterRouter());
    setSlider(viewer, "30");
    await flushMicrotasks();
    expect(drawnIds(viewer).length).toBe(graphT30.nodes.length);
    const last = calls[calls.length - 1];
    expect(last.url.searchParams.get("min_node_freq")).toBe("30");

    setSlider(viewer, "60");
    await flushMicrotasks();
    expect(drawnIds(viewer).length).toBe(graphT60.nodes.length);
    expect(graphT60.nodes.length).toBeLessThan(graphT30.nodes.length);
    expect(graphT30.nodes.length).toBeLessThan(graphT0.nodes.length);
  });

  it("clicking a state fills the details panel and recolors its arcs", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    const target = viewer.svg.querySelector(`g[data-id="${detail.id}"]`)!;
    target.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await flushMicrotasks();

    expect(viewer.state.selected).toBe(detail.id);
    expect(viewer.details.element.querySelector("h3")!.textContent).toBe(detail.label);

    const strokes = [...viewer.svg.querySelectorAll("g[data-from] line")].map((l) =>
      l.getAttribute("stroke"),
    );
    const wantOut = graphT0.edges.filter((e) => e.from === detail.id).length;
    const wantIn = graphT0.edges.filter((e) => e.to === detail.id).length;
    expect(strokes.filter((s) => s === RELATE_OUTGOING).length).toBe(wantOut);
    expect(strokes.filter((s) => s === RELATE_INCOMING).length).toBe(wantIn);

    const rect = target.querySelector("rect")!;
    expect(rect.getAttribute("stroke")).toBe(SELECTION_HALO);
    expect(rect.getAttribute("stroke-width")).toBe("3");
  });

  it("clicking the background clears the selection", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    const target = viewer.svg.querySelector(`g[data-id="${detail.id}"]`)!;
    target.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await flushMicrotasks();

    viewer.svg.dispatchEvent(new MouseEvent("click"));
    expect(viewer.state.selected).toBeNull();
    expect(viewer.details.element.textContent).toContain("select a state");
    const strokes = [...viewer.svg.querySelectorAll("g[data-from] line")].map((l) =>
      l.getAttribute("stroke"),
    );
    expect(strokes.includes(RELATE_OUTGOING)).toBe(false);
    expect(strokes.includes(RELATE_INCOMING)).toBe(false);
    const rect = target.querySelector("rect")!;
    expect(rect.getAttribute("stroke-width")).toBe("2");
  });

  it("jumping to a search hit centers the viewport on the state", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    await viewer.jumpTo(detail.id);
    const node = graphT0.nodes.find((n) => n.id === detail.id)!;
    const screen = viewer.viewport.toScreen(node.x, node.y);
    expect(screen.x).toBeCloseTo(600, 6);
    expect(screen.y).toBeCloseTo(400, 6);
    expect(viewer.state.selected).toBe(detail.id);
    expect(viewer.details.element.querySelector("h3")!.textContent).toBe(detail.label);
  });

  it("per-date view with an open window matches the global graph", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    viewer.switcher.modeSelect.value = "per-date";
    viewer.switcher.modeSelect.dispatchEvent(new Event("change"));
    viewer.switcher.applyButton.click();
    await flushMicrotasks();
    expect(new Set(drawnIds(viewer))).toEqual(new Set(graphT0.nodes.map((n) => n.id)));
  });

  it("narrowing the date window drops late-only states", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    viewer.switcher.modeSelect.value = "per-date";
    viewer.switcher.modeSelect.dispatchEvent(new Event("change"));
    viewer.switcher.toInput.value = "2013-05-15";
    viewer.switcher.applyButton.click();
    await flushMicrotasks();
    expect(drawnIds(viewer).length).toBe(dateviewEarly.nodes.length);
    expect(dateviewEarly.nodes.length).toBeLessThan(dateviewFull.nodes.length);
  });

  it("per-student view draws the one trace, all in the correct flow", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    viewer.switcher.modeSelect.value = "per-student";
    viewer.switcher.modeSelect.dispatchEvent(new Event("change"));
    viewer.switcher.studentInput.value = tracePerfect.student_id;
    viewer.switcher.applyButton.click();
    await flushMicrotasks();
    const groups = [...viewer.svg.querySelectorAll("g[data-id]")];
    expect(groups.length).toBe(tracePerfect.nodes.length);
    expect(groups.every((g) => g.getAttribute("data-zone") === "correct_flow")).toBe(true);
  });

  it("server failures surface in the banner and clear on recovery", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    setSlider(viewer, "99"); // off the captured grid, router plays a 500
    await flushMicrotasks();
    expect(viewer.banner.hidden).toBe(false);
    expect(viewer.banner.textContent).toBe("graph_failed: boom");
    expect(drawnIds(viewer).length).toBe(graphT0.nodes.length); // stale graph kept

    setSlider(viewer, "30");
    await flushMicrotasks();
    expect(viewer.banner.hidden).toBe(true);
    expect(drawnIds(viewer).length).toBe(graphT30.nodes.length);
  });

  it("cluster tabs switch graphs in a multi-cluster model", async () => {
    const modelsK2 = fixture<ModelInfo[]>("models_k2");
    const id2 = modelsK2[0].model_id;
    const c0 = fixture<LayoutGraph>("graph_k2_c0");
    const c1 = fixture<LayoutGraph>("graph_k2_c1");
    const router: Router = (url) => {
      if (url.pathname === "/models") return { status: 200, body: modelsK2 };
      if (url.pathname === `/models/${id2}/clusters`) {
        return { status: 200, body: fixture("clusters_k2") };
      }
      if (url.pathname === `/models/${id2}/clusters/0/graph`) return { status: 200, body: c0 };
      if (url.pathname === `/models/${id2}/clusters/1/graph`) return { status: 200, body: c1 };
      return undefined;
    };
    const { viewer } = await bootViewer(router);
    expect(viewer.tabs.element.querySelectorAll("button").length).toBe(2);
    expect(drawnIds(viewer).length).toBe(c0.nodes.length);

    viewer.tabs.element.querySelector<HTMLButtonElement>('button[data-cluster="1"]')!.click();
    await flushMicrotasks();
    expect(viewer.state.cluster).toBe(1);
    expect(drawnIds(viewer).length).toBe(c1.nodes.length);
    const active = viewer.tabs.element.querySelector("button.active")!;
    expect(active.getAttribute("data-cluster")).toBe("1");
  });

  it("wheel zooms, nav buttons and dragging pan", async () => {
    const { viewer } = await bootViewer(singleClusterRouter());
    const before = { ...viewer.state.viewport };

    viewer.svg.dispatchEvent(new WheelEvent("wheel", { deltaY: -100 }));
    expect(viewer.state.viewport.scale).toBeGreaterThan(before.scale);

    const afterZoom = viewer.state.viewport.offsetX;
    viewer.root.querySelector<HTMLButtonElement>('button[data-pan="left"]')!.click();
    expect(viewer.state.viewport.offsetX).toBeCloseTo(afterZoom + 80, 9);

    const beforeDrag = { ...viewer.state.viewport };
    viewer.svg.dispatchEvent(new MouseEvent("mousedown", { clientX: 10, clientY: 10 }));
    viewer.svg.dispatchEvent(new MouseEvent("mousemove", { clientX: 35, clientY: -5 }));
    viewer.svg.dispatchEvent(new MouseEvent("mouseup"));
    expect(viewer.state.viewport.offsetX).toBeCloseTo(beforeDrag.offsetX + 25, 9);
    expect(viewer.state.viewport.offsetY).toBeCloseTo(beforeDrag.offsetY - 15, 9);

    // released: further movement must not pan
    const rest = { ...viewer.state.viewport };
    viewer.svg.dispatchEvent(new MouseEvent("mousemove", { clientX: 90, clientY: 90 }));
    expect(viewer.state.viewport.offsetX).toBe(rest.offsetX);
  });
});
