export { ApiClient, ApiError } from "./api.js";
export { mount, Viewer } from "./app.js";
export { DetailsPanel } from "./details.js";
export { FilterPanel } from "./filters.js";
export { GraphScene } from "./render.js";
export { SearchBox } from "./search.js";
export { ClusterTabs, ViewSwitcher } from "./views.js";
export { Viewport, MAX_SCALE, MIN_SCALE } from "./viewport.js";
export * from "./types.js";
