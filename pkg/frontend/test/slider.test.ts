import { describe, expect, it } from "vitest";

import { strategyForShare } from "../src/slider.js";

describe("strategyForShare", () => {
  it("share 0 is pure input accumulation", () => {
    expect(strategyForShare(0, 0.15)).toEqual({ mode: "inputs_only", tfp_growth: 0 });
  });

  it("share 1 is pure productivity growth", () => {
    expect(strategyForShare(1, 0.15)).toEqual({ mode: "tfp_only", tfp_growth: 0 });
  });

  it("interior shares scale the target rate by exact compounding", () => {
    const strategy = strategyForShare(0.5, 0.15);
    expect(strategy.mode).toBe("mixed");
    expect(strategy.tfp_growth).toBeCloseTo(Math.sqrt(1.15) - 1, 15);
    // Composing the scaled rate with its complement recovers the target.
    const complement = strategyForShare(0.5, 0.15).tfp_growth;
    expect((1 + complement) * (1 + complement) - 1).toBeCloseTo(0.15, 12);
  });

  it("is monotone in the share", () => {
    let previous = -1;
    for (let share = 0.05; share < 1; share += 0.05) {
      const value = strategyForShare(share, 0.15).tfp_growth;
      expect(value).toBeGreaterThan(previous);
      previous = value;
    }
  });

  it("rejects shares outside [0, 1]", () => {
    expect(() => strategyForShare(-0.1, 0.15)).toThrow(RangeError);
    expect(() => strategyForShare(1.1, 0.15)).toThrow(RangeError);
  });
});
