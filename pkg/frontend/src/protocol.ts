// Mirror of the solver endpoint's JSON protocol (protocol_version 1).
// The editor performs no curve math of its own: every number it shows
// originates in one of these records.

export const PROTOCOL_VERSION = 1;

export interface SegmentReport {
  alpha_deg: number;
  beta_deg: number;
  energy: number;
  breadth: number;
  params_t1: number | null;
  params_t2: number | null;
  kind: string;
}

export interface NodeReport {
  node_index: number;
  psi_deg: number;
  alpha_in_deg: number;
  alpha_out_deg: number;
  kappa_jump: number;
  certified_by_psi: boolean;
  g2_within_tol: boolean;
}

export interface ConstantsBlock {
  d: number;
  t_star: number;
  t_bar: number;
  psi_deg: number;
}

export interface FitReport {
  total_energy: number;
  per_segment: SegmentReport[];
  per_node: NodeReport[];
  constants: ConstantsBlock;
  converged: boolean;
  sweeps: number;
}

export interface EndpointMode {
  theta_first: number;
  theta_last: number;
}

export interface FitRequest {
  op: "fit";
  points: [number, number][];
  endpoint_mode?: EndpointMode;
  spacing?: number;
}

export interface FitResponse {
  protocol_version: number;
  report: FitReport;
  polylines: [number, number][][];
}

export interface ErrorResponse {
  error: string;
  message: string;
  protocol_version: number;
}
