import { beforeEach, describe, expect, it } from "vitest";

import type { ViewMode } from "../src/types.js";
import { ClusterTabs, ViewSwitcher } from "../src/views.js";

function switcher() {
  const switched: ViewMode[] = [];
  const sw = new ViewSwitcher((v) => switched.push(v));
  document.body.appendChild(sw.element);
  return { sw, switched };
}

describe("ViewSwitcher", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("starts in global mode with date and student inputs hidden", () => {
    const { sw, switched } = switcher();
    expect(switched).toEqual([{ mode: "global" }]);
    expect(sw.fromInput.hidden).toBe(true);
    expect(sw.studentInput.hidden).toBe(true);
  });

  it("reveals the date pickers in per-date mode and emits the window", () => {
    const { sw, switched } = switcher();
    sw.modeSelect.value = "per-date";
    sw.modeSelect.dispatchEvent(new Event("change"));
    expect(sw.fromInput.hidden).toBe(false);
    expect(sw.toInput.hidden).toBe(false);

    sw.fromInput.value = "2013-03-01";
    sw.toInput.value = "2013-06-30";
    sw.applyButton.dispatchEvent(new MouseEvent("click"));
    expect(switched.at(-1)).toEqual({
      mode: "per-date",
      from: "2013-03-01",
      to: "2013-06-30",
    });
  });

  it("rejects an inverted date range with an inline message", () => {
    const { sw, switched } = switcher();
    const before = switched.length;
    sw.modeSelect.value = "per-date";
    sw.modeSelect.dispatchEvent(new Event("change"));
    sw.fromInput.value = "2013-08-01";
    sw.toInput.value = "2013-02-01";
    sw.applyButton.dispatchEvent(new MouseEvent("click"));
    expect(sw.validationMessage).toBe("from is after to");
    expect(switched.length).toBe(before);
  });

  it("requires a student id in per-student mode", () => {
    const { sw, switched } = switcher();
    sw.modeSelect.value = "per-student";
    sw.modeSelect.dispatchEvent(new Event("change"));
    expect(sw.studentInput.hidden).toBe(false);

    sw.applyButton.dispatchEvent(new MouseEvent("click"));
    expect(sw.validationMessage).toBe("enter a student id");

    sw.studentInput.value = "  s007 ";
    sw.applyButton.dispatchEvent(new MouseEvent("click"));
    expect(switched.at(-1)).toEqual({ mode: "per-student", studentId: "s007" });
  });
});

describe("ClusterTabs", () => {
  it("renders one button per cluster and reports picks", () => {
    const picks: number[] = [];
    const tabs = new ClusterTabs((c) => picks.push(c));
    document.body.appendChild(tabs.element);
    tabs.render(3, 0);

    const buttons = tabs.element.querySelectorAll("button");
    expect(buttons.length).toBe(3);
    expect(buttons[0].classList.contains("active")).toBe(true);
    expect(buttons[2].classList.contains("active")).toBe(false);

    buttons[2].dispatchEvent(new MouseEvent("click"));
    expect(picks).toEqual([2]);

    tabs.render(3, 2);
    expect(tabs.element.querySelectorAll("button")[2].classList.contains("active")).toBe(true);
  });
});
