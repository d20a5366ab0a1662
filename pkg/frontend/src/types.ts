/** Service JSON shapes, verbatim. The client never re-derives these numbers. */

export interface ModelJson {
  tfp: number;
  elasticities: Record<string, number>;
  crts_imposed: boolean;
  residual_variance: number;
  warnings?: string[];
}

export interface RivalJson {
  follower_level: number;
  leader_level: number;
  leader_rate: number;
  follower_rate?: number | null;
}

export interface TargetJson {
  kind: "explicit_rate" | "multiple" | "catchup";
  rate?: number | null;
  multiple?: number | null;
  horizon_years?: number | null;
  rival?: RivalJson | null;
}

export interface StrategyJson {
  mode: "inputs_only" | "tfp_only" | "mixed";
  tfp_growth: number;
}

export interface GrowthRatesJson {
  output_growth: number;
  input_growth: Record<string, number>;
  tfp_growth: number | null;
}

export interface PlanRowJson {
  year: number;
  output: number;
  tfp: number;
  input_levels: Record<string, number>;
  input_levels_display: Record<string, number>;
  growth_applied: GrowthRatesJson | null;
}

export interface PlanDecompositionJson {
  contributions: Record<string, number>;
  approximate_output_growth: number;
  exact_output_growth: number;
  shares: Record<string, number> | null;
}

export interface PlanJson {
  model: ModelJson;
  target: TargetJson;
  strategy: StrategyJson;
  annual_output_growth: number;
  common_input_growth: number;
  decomposition: PlanDecompositionJson;
  rows: PlanRowJson[];
}

export interface EvaluationJson {
  year: number;
  planned: { output: number; tfp: number; input_levels: Record<string, number> };
  realized: { period: string; input_levels: Record<string, number>; output_level: number };
  output_gap: number;
  input_gaps: Record<string, number>;
  remaining_required_rate: number | null;
}

export interface ScenarioJson {
  id: string;
  dataset_ref: string;
  model: ModelJson;
  target: TargetJson;
  strategy: StrategyJson;
  horizon_years: number;
  discrete_inputs: string[];
  latest_plan: PlanJson | null;
  evaluations: EvaluationJson[];
  version: number;
}

export interface ServiceErrorBody {
  error: { code: string; message: string; detail: Record<string, unknown> };
}
