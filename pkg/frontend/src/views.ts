import type { ViewMode } from "./types.js";

/**
 * Top-menu switcher between the global graph, a date-window rebuild and
 * a single student's trace. Emits only valid modes; an inverted date
 * range never leaves the widget, it shows an inline message instead.
 */
export class ViewSwitcher {
  readonly element: HTMLElement;
  readonly modeSelect: HTMLSelectElement;
  readonly fromInput: HTMLInputElement;
  readonly toInput: HTMLInputElement;
  readonly studentInput: HTMLInputElement;
  readonly applyButton: HTMLButtonElement;
  private message: HTMLElement;

  constructor(private readonly onSwitch: (view: ViewMode) => void) {
    this.element = document.createElement("div");
    this.element.className = "view-switcher";

    this.modeSelect = document.createElement("select");
    for (const mode of ["global", "per-date", "per-student"]) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = mode;
      this.modeSelect.appendChild(option);
    }
    this.element.appendChild(this.modeSelect);

    this.fromInput = document.createElement("input");
    this.fromInput.type = "date";
    this.fromInput.dataset.role = "from";
    this.toInput = document.createElement("input");
    this.toInput.type = "date";
    this.toInput.dataset.role = "to";
    this.studentInput = document.createElement("input");
    this.studentInput.type = "text";
    this.studentInput.placeholder = "student id";

    this.applyButton = document.createElement("button");
    this.applyButton.textContent = "apply";

    this.message = document.createElement("span");
    this.message.className = "validation-message";

    this.element.append(this.fromInput, this.toInput, this.studentInput,
                        this.applyButton, this.message);

    this.modeSelect.addEventListener("change", () => this.syncVisibility());
    this.applyButton.addEventListener("click", () => this.apply());
    this.syncVisibility();
  }

  private syncVisibility(): void {
    const mode = this.modeSelect.value;
    this.fromInput.hidden = this.toInput.hidden = mode !== "per-date";
    this.studentInput.hidden = mode !== "per-student";
    this.message.textContent = "";
    if (mode === "global") this.onSwitch({ mode: "global" });
  }

  apply(): void {
    const mode = this.modeSelect.value;
    this.message.textContent = "";
    if (mode === "global") {
      this.onSwitch({ mode: "global" });
      return;
    }
    if (mode === "per-date") {
      const from = this.fromInput.value;
      const to = this.toInput.value;
      if (from && to && from > to) {
        this.message.textContent = "from is after to";
        return;
      }
      this.onSwitch({ mode: "per-date", from, to });
      return;
    }
    const studentId = this.studentInput.value.trim();
    if (!studentId) {
      this.message.textContent = "enter a student id";
      return;
    }
    this.onSwitch({ mode: "per-student", studentId });
  }

  get validationMessage(): string {
    return this.message.textContent ?? "";
  }
}

/** One button per cluster; the active one carries the `active` class. */
export class ClusterTabs {
  readonly element: HTMLElement;

  constructor(private readonly onPick: (cluster: number) => void) {
    this.element = document.createElement("nav");
    this.element.className = "cluster-tabs";
  }

  render(count: number, active: number): void {
    this.element.textContent = "";
    for (let i = 0; i < count; i++) {
      const button = document.createElement("button");
      button.textContent = `cluster ${i}`;
      button.dataset.cluster = String(i);
      if (i === active) button.classList.add("active");
      button.addEventListener("click", () => this.onPick(i));
      this.element.appendChild(button);
    }
  }
}
