// The one module allowed to own color constants. Everything drawn from
// data (node fills, outlines, edge shades) arrives in server payloads;
// what lives here is interaction chrome only.

// Relate highlighting around the selected state.
export const RELATE_OUTGOING = "rgb(160,32,240)"; // purple
export const RELATE_INCOMING = "rgb(173,216,230)"; // light blue

// Panel and widget chrome.
export const SELECTION_HALO = "rgb(30,30,30)";
export const PANEL_BACKGROUND = "rgb(248,248,248)";
export const PANEL_BORDER = "rgb(208,208,208)";
export const ERROR_BANNER_BACKGROUND = "rgb(180,30,30)";
export const ERROR_BANNER_TEXT = "rgb(255,255,255)";
export const HINT_TEXT = "rgb(110,110,110)";

/** Grayscale ink for an edge, straight from the server-supplied shade. */
export function edgeStroke(shade: number): string {
  return `rgb(${shade},${shade},${shade})`;
}

/** CSS color for a server-supplied RGB triple, verbatim. */
export function paint(rgb: [number, number, number]): string {
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}
