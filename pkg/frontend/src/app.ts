import { ApiClient, ApiError } from "./api.js";
import { DetailsPanel } from "./details.js";
import { FilterPanel } from "./filters.js";
import { GraphScene } from "./render.js";
import { SearchBox } from "./search.js";
import type { LayoutGraph, ViewMode, ViewState } from "./types.js";
import { ClusterTabs, ViewSwitcher } from "./views.js";
import { Viewport } from "./viewport.js";

const PAN_STEP = 80;
const ZOOM_STEP = 1.25;

export interface ViewerOptions {
  width?: number;
  height?: number;
}

/**
 * The whole instructor-facing client: canvas with pan/zoom, filter
 * controls, search, details-on-demand, relate highlighting and
 * global / per-date / per-student views, all fed by the HTTP API.
 */
export class Viewer {
  readonly state: ViewState;
  readonly viewport = new Viewport();
  readonly scene: GraphScene;
  readonly filters: FilterPanel;
  readonly search: SearchBox;
  readonly details: DetailsPanel;
  readonly switcher: ViewSwitcher;
  readonly tabs: ClusterTabs;
  readonly svg: SVGSVGElement;
  readonly banner: HTMLElement;

  private readonly width: number;
  private readonly height: number;
  private epoch = 0;

  constructor(
    readonly root: HTMLElement,
    private readonly api: ApiClient,
    options: ViewerOptions = {},
  ) {
    this.width = options.width ?? 1200;
    this.height = options.height ?? 800;
    this.state = {
      modelId: "",
      cluster: 0,
      viewport: { offsetX: 0, offsetY: 0, scale: 1 },
      filter: { minNodeFreq: 0, minEdgeFreq: 0 },
      selected: null,
      view: { mode: "global" },
    };

    root.classList.add("tutorlens-viewer");

    this.banner = document.createElement("div");
    this.banner.className = "error-banner";
    this.banner.hidden = true;
    root.appendChild(this.banner);

    const header = document.createElement("header");
    this.tabs = new ClusterTabs((cluster) => void this.pickCluster(cluster));
    this.switcher = new ViewSwitcher((view) => void this.switchView(view));
    this.search = new SearchBox(
      (q, zone) => this.api.search(this.state.modelId, this.state.cluster, q, zone),
      (match) => void this.jumpTo(match.id),
    );
    header.append(this.tabs.element, this.switcher.element, this.search.element);
    root.appendChild(header);

    const main = document.createElement("main");
    this.filters = new FilterPanel(this.state.filter, (filter) => {
      this.state.filter = filter;
      void this.refetch();
    });
    main.appendChild(this.filters.element);

    const stage = document.createElement("div");
    stage.className = "stage";
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("width", String(this.width));
    this.svg.setAttribute("height", String(this.height));
    stage.appendChild(this.svg);
    stage.appendChild(this.buildNavButtons());
    main.appendChild(stage);

    this.details = new DetailsPanel();
    main.appendChild(this.details.element);
    root.appendChild(main);

    this.scene = new GraphScene(this.svg, {
      onNodeClick: (id) => void this.selectState(id),
      onBackgroundClick: () => this.deselect(),
    });

    this.svg.addEventListener("wheel", (event) => {
      event.preventDefault();
      const factor = event.deltaY < 0 ? ZOOM_STEP : 1 / ZOOM_STEP;
      this.viewport.zoomAt(factor, event.offsetX, event.offsetY);
      this.syncViewport();
    });
    this.attachDragPan();
  }

  private buildNavButtons(): HTMLElement {
    const nav = document.createElement("div");
    nav.className = "nav-buttons";
    const moves: Array<[string, number, number]> = [
      ["left", PAN_STEP, 0],
      ["right", -PAN_STEP, 0],
      ["up", 0, PAN_STEP],
      ["down", 0, -PAN_STEP],
    ];
    for (const [name, dx, dy] of moves) {
      const button = document.createElement("button");
      button.dataset.pan = name;
      button.textContent = name;
      button.addEventListener("click", () => {
        this.viewport.panBy(dx, dy);
        this.syncViewport();
      });
      nav.appendChild(button);
    }
    for (const [name, factor] of [["zoom-in", ZOOM_STEP], ["zoom-out", 1 / ZOOM_STEP]] as const) {
      const button = document.createElement("button");
      button.dataset.zoom = name;
      button.textContent = name;
      button.addEventListener("click", () => {
        this.viewport.zoomAt(factor, this.width / 2, this.height / 2);
        this.syncViewport();
      });
      nav.appendChild(button);
    }
    return nav;
  }

  private attachDragPan(): void {
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    this.svg.addEventListener("mousedown", (event) => {
      dragging = true;
      lastX = event.clientX;
      lastY = event.clientY;
    });
    this.svg.addEventListener("mousemove", (event) => {
      if (!dragging) return;
      this.viewport.panBy(event.clientX - lastX, event.clientY - lastY);
      lastX = event.clientX;
      lastY = event.clientY;
      this.syncViewport();
    });
    for (const done of ["mouseup", "mouseleave"]) {
      this.svg.addEventListener(done, () => {
        dragging = false;
      });
    }
  }

  private syncViewport(): void {
    this.state.viewport = {
      offsetX: this.viewport.offsetX,
      offsetY: this.viewport.offsetY,
      scale: this.viewport.scale,
    };
    this.scene.applyViewport(this.viewport);
  }

  private showError(error: unknown): void {
    const message =
      error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private clearError(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }

  async init(): Promise<void> {
    try {
      const models = await this.api.listModels();
      if (models.length === 0) throw new ApiError(404, "no_models", "store is empty");
      this.state.modelId = models[0].model_id;
      const clusters = await this.api.listClusters(this.state.modelId);
      this.tabs.render(clusters.length, this.state.cluster);
      await this.refetch(true);
    } catch (error) {
      this.showError(error);
    }
  }

  async pickCluster(cluster: number): Promise<void> {
    this.state.cluster = cluster;
    this.state.selected = null;
    this.details.clear();
    const count = this.tabs.element.childElementCount;
    this.tabs.render(count, cluster);
    await this.refetch(true);
  }

  async switchView(view: ViewMode): Promise<void> {
    this.state.view = view;
    await this.refetch(true);
  }

  /** Fetch the graph for the current view state and redraw. */
  async refetch(refit = false): Promise<void> {
    const { modelId, cluster, filter, view } = this.state;
    if (!modelId) return;
    const ticket = ++this.epoch;
    let graph: LayoutGraph;
    try {
      if (view.mode === "per-date") {
        graph = await this.api.dateView(modelId, view.from, view.to);
      } else if (view.mode === "per-student") {
        graph = await this.api.trace(modelId, view.studentId);
      } else {
        graph = await this.api.graph(modelId, cluster, filter);
      }
    } catch (error) {
      if ((error as { name?: string }).name !== "AbortError") this.showError(error);
      return;
    }
    if (ticket !== this.epoch) return; // a newer view state won
    this.clearError();
    this.scene.draw(graph);
    if (refit) {
      this.viewport.fit(graph.width, graph.height, this.width, this.height);
    }
    this.syncViewport();
    if (this.state.selected) this.scene.relate(this.state.selected);
  }

  async selectState(id: string): Promise<void> {
    this.state.selected = id;
    this.scene.relate(id);
    try {
      const detail = await this.api.stateDetail(this.state.modelId, this.state.cluster, id);
      this.details.show(detail);
      this.clearError();
    } catch (error) {
      if ((error as { name?: string }).name !== "AbortError") this.showError(error);
    }
  }

  deselect(): void {
    this.state.selected = null;
    this.scene.relate(null);
    this.details.clear();
  }

  /** Center the viewport on a state picked from search, then select it. */
  async jumpTo(id: string): Promise<void> {
    const center = this.scene.nodeCenter(id);
    if (center) {
      this.viewport.centerOn(center.x, center.y, this.width, this.height);
      this.syncViewport();
    }
    await this.selectState(id);
  }
}

export function mount(root: HTMLElement, baseUrl = ""): Viewer {
  const viewer = new Viewer(root, new ApiClient(baseUrl));
  void viewer.init();
  return viewer;
}
