import type { StateDetail } from "./types.js";

/** Right-docked panel showing the full record of the selected state. */
export class DetailsPanel {
  readonly element: HTMLElement;

  constructor() {
    this.element = document.createElement("aside");
    this.element.className = "details-panel";
    this.clear();
  }

  clear(): void {
    this.element.textContent = "";
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = "select a state to inspect it";
    this.element.appendChild(hint);
  }

  show(detail: StateDetail): void {
    this.element.textContent = "";

    const title = document.createElement("h3");
    title.textContent = detail.label;
    this.element.appendChild(title);

    const facts: Array<[string, string]> = [
      ["zone", detail.zone.replaceAll("_", " ")],
      ["kind", detail.kind.replaceAll("_", " ")],
      ["students", `${detail.count} (${detail.frequency.toFixed(1)}%)`],
    ];
    if (detail.blamed) facts.push(["blames", detail.blamed]);
    if (detail.member_count > 1) {
      facts.push(["grouped stumbles", String(detail.member_count)]);
    }
    const dl = document.createElement("dl");
    for (const [term, value] of facts) {
      const dt = document.createElement("dt");
      dt.textContent = term;
      const dd = document.createElement("dd");
      dd.textContent = value;
      dl.appendChild(dt);
      dl.appendChild(dd);
    }
    this.element.appendChild(dl);

    if (detail.description) {
      const p = document.createElement("p");
      p.className = "description";
      p.textContent = detail.description;
      this.element.appendChild(p);
    }
    if (detail.tutoring_message) {
      const p = document.createElement("p");
      p.className = "tutoring-message";
      p.textContent = detail.tutoring_message;
      this.element.appendChild(p);
    }

    for (const [name, arcs] of [
      ["incoming", detail.incoming],
      ["outgoing", detail.outgoing],
    ] as const) {
      const h = document.createElement("h4");
      h.textContent = `${name} (${arcs.length})`;
      this.element.appendChild(h);
      const ul = document.createElement("ul");
      ul.className = `arcs-${name}`;
      for (const arc of arcs) {
        const li = document.createElement("li");
        li.textContent = `${arc.label}: ${arc.frequency.toFixed(1)}%`;
        ul.appendChild(li);
      }
      this.element.appendChild(ul);
    }
  }
}
