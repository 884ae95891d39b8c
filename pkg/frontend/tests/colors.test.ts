import { readdirSync, readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

const srcDir = join(process.cwd(), "src");

// Every fill, outline and edge shade must arrive in the payload; the only
// colors the client is allowed to own are the interaction accents, and
// those live in one module.
describe("color ownership", () => {
  it("keeps hardcoded colors out of every module except chrome", () => {
    const literal =
      /rgb\s*\(|#[0-9a-fA-F]{3,8}\b|"(?:purple|lightblue|steelblue|crimson|red|green|blue|black|white|orange|yellow)"/;
    const offenders: string[] = [];
    for (const name of readdirSync(srcDir).filter((n) => n.endsWith(".ts"))) {
      const code = readFileSync(join(srcDir, name), "utf-8");
      if (literal.test(code)) offenders.push(name);
    }
    expect(offenders).toEqual(["chrome.ts"]);
  });

  it("chrome itself only paints grayscale from shades plus the accents", () => {
    const code = readFileSync(join(srcDir, "chrome.ts"), "utf-8");
    const fixed = code.match(/"rgb\(\d+,\s*\d+,\s*\d+\)"/g) ?? [];
    // accents and panel chrome, not zone or error colors
    expect(fixed.length).toBeGreaterThan(0);
    for (const zoneColor of ["4,255,117", "255,128,0", "255,0,1", "241,106,239"]) {
      expect(code.includes(zoneColor)).toBe(false);
    }
  });
});
