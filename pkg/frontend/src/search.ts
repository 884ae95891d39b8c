import type { SearchMatch } from "./types.js";

/**
 * Search box with an autocomplete dropdown backed by the server's
 * prefix search. Results arrive busiest-first; an empty query shows the
 * top-frequency states, and a query with no hits shows an inline
 * "not found" entry instead of an empty dropdown.
 */
export class SearchBox {
  readonly element: HTMLElement;
  readonly input: HTMLInputElement;
  readonly zoneSelect: HTMLSelectElement;
  private list: HTMLUListElement;

  constructor(
    private readonly lookup: (q: string, zone?: string) => Promise<SearchMatch[]>,
    private readonly onPick: (match: SearchMatch) => void,
  ) {
    this.element = document.createElement("div");
    this.element.className = "search-box";

    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.placeholder = "find a state";
    this.element.appendChild(this.input);

    this.zoneSelect = document.createElement("select");
    for (const [value, label] of [
      ["", "any zone"],
      ["correct_flow", "correct flow"],
      ["irrelevant_errors", "irrelevant errors"],
      ["relevant_errors", "relevant errors"],
    ]) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = label;
      this.zoneSelect.appendChild(option);
    }
    this.element.appendChild(this.zoneSelect);

    this.list = document.createElement("ul");
    this.list.className = "search-results";
    this.element.appendChild(this.list);

    this.input.addEventListener("input", () => void this.refresh());
    this.zoneSelect.addEventListener("change", () => void this.refresh());
  }

  async refresh(): Promise<void> {
    const zone = this.zoneSelect.value || undefined;
    let matches: SearchMatch[];
    try {
      matches = await this.lookup(this.input.value, zone);
    } catch {
      return; // superseded or failed; the newest request will render
    }
    this.list.textContent = "";
    if (matches.length === 0) {
      const hint = document.createElement("li");
      hint.className = "hint";
      hint.textContent = "not found";
      this.list.appendChild(hint);
      return;
    }
    for (const match of matches) {
      const item = document.createElement("li");
      item.dataset.id = match.id;
      item.textContent = `${match.label} (${match.frequency.toFixed(1)}%)`;
      item.addEventListener("click", () => {
        this.list.textContent = "";
        this.onPick(match);
      });
      this.list.appendChild(item);
    }
  }

  get resultItems(): HTMLLIElement[] {
    return Array.from(this.list.querySelectorAll("li"));
  }
}
