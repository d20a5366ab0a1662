/**
 * Map the TFP-share slider to a strategy override for what-if calls.
 *
 * Share 0 is pure input accumulation, share 1 is pure productivity growth.
 * In between, the planned TFP rate is the share-scaled target rate under
 * exact compounding: (1 + target)^share - 1, so the extremes land exactly on
 * the two pure regimes. The server solves the input-rate split; the client
 * never does.
 */

import type { StrategyJson } from "./types.js";

export function strategyForShare(tfpShare: number, targetRate: number): StrategyJson {
  if (!(tfpShare >= 0 && tfpShare <= 1)) {
    throw new RangeError(`TFP share must lie in [0, 1], got ${tfpShare}`);
  }
  if (tfpShare === 0) return { mode: "inputs_only", tfp_growth: 0 };
  if (tfpShare === 1) return { mode: "tfp_only", tfp_growth: 0 };
  return { mode: "mixed", tfp_growth: Math.pow(1 + targetRate, tfpShare) - 1 };
}
