import type { FilterSpec } from "./types.js";

interface Row {
  slider: HTMLInputElement;
  text: HTMLInputElement;
  value: number;
}

/**
 * Two threshold controls, each a slider plus a text box kept in sync.
 * Any committed change reports the new FilterSpec so the owner can
 * refetch; rejected input (non-numeric or outside 0..100) reverts the
 * field to the last good value.
 */
export class FilterPanel {
  readonly element: HTMLElement;
  private rows: { node: Row; edge: Row };

  constructor(
    initial: FilterSpec,
    private readonly onChange: (filter: FilterSpec) => void,
  ) {
    this.element = document.createElement("div");
    this.element.className = "filter-panel";
    this.rows = {
      node: this.buildRow("min state frequency %", "node", initial.minNodeFreq),
      edge: this.buildRow("min edge frequency %", "edge", initial.minEdgeFreq),
    };
  }

  get value(): FilterSpec {
    return { minNodeFreq: this.rows.node.value, minEdgeFreq: this.rows.edge.value };
  }

  private buildRow(title: string, role: string, initial: number): Row {
    const wrap = document.createElement("label");
    wrap.className = "filter-row";
    wrap.textContent = title;

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "100";
    slider.step = "1";
    slider.value = String(initial);
    slider.dataset.role = `${role}-slider`;

    const text = document.createElement("input");
    text.type = "text";
    text.value = String(initial);
    text.dataset.role = `${role}-text`;

    const row: Row = { slider, text, value: initial };

    slider.addEventListener("input", () => {
      this.commit(row, slider.value);
    });
    text.addEventListener("change", () => {
      this.commit(row, text.value);
    });

    wrap.appendChild(slider);
    wrap.appendChild(text);
    this.element.appendChild(wrap);
    return row;
  }

  private commit(row: Row, raw: string): void {
    const parsed = Number(raw.trim());
    const valid = raw.trim() !== "" && Number.isFinite(parsed) && parsed >= 0 && parsed <= 100;
    if (!valid) {
      row.text.value = String(row.value);
      row.slider.value = String(row.value);
      row.text.classList.add("rejected");
      return;
    }
    row.text.classList.remove("rejected");
    row.value = parsed;
    row.text.value = String(parsed);
    row.slider.value = String(parsed);
    this.onChange(this.value);
  }
}
