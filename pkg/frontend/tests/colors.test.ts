import { describe, expect, it } from "vitest";

import { divergingColor, sequentialGray, signColor } from "../src/colors.js";

describe("diverging ramp", () => {
  it("hits the three stops", () => {
    expect(divergingColor(3.5, 3.5)).toBe("rgb(178,24,43)");
    expect(divergingColor(-3.5, 3.5)).toBe("rgb(33,102,172)");
    expect(divergingColor(0, 3.5)).toBe("rgb(247,247,247)");
  });

  it("clamps values past the extremes", () => {
    expect(divergingColor(100, 1)).toBe(divergingColor(1, 1));
    expect(divergingColor(-100, 1)).toBe(divergingColor(-1, 1));
  });

  it("rejects a non-positive scale", () => {
    expect(() => divergingColor(1, 0)).toThrow();
    expect(() => divergingColor(1, -2)).toThrow();
  });
});

describe("gray ramp", () => {
  it("runs white to dark and clamps", () => {
    expect(sequentialGray(0, 5)).toBe("rgb(247,247,247)");
    expect(sequentialGray(5, 5)).toBe("rgb(26,26,26)");
    expect(sequentialGray(50, 5)).toBe(sequentialGray(5, 5));
  });
});

describe("sign colors", () => {
  it("positive is the red stop, negative the blue one", () => {
    expect(signColor("positive")).toBe("#b2182b");
    expect(signColor("negative")).toBe("#2166ac");
  });
});
