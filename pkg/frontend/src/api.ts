/** Typed client for the composize JSON API. All numbers shown anywhere in the
 * UI come out of these response types; nothing is recomputed client-side. */

export interface BoundsFragment {
  lower: number;
  upper: number;
}

export interface RecommendationRow {
  category: 'weak' | 'moderate' | 'strong' | 'no_prior';
  rho_interval: [number, number];
  power_range: [number, number];
  n_total: number;
  n_total_raw: number;
  n_per_group: number;
  design_rho: number;
  achieved_power_at_design: number;
}

export interface BoundsResponse {
  bounds: BoundsFragment;
  version: string;
}

export interface RecommendResponse {
  bounds: BoundsFragment;
  recommendations: RecommendationRow[];
  version: string;
}

export interface CurvePoint {
  rho: number;
  n_low: number;
  n_point: number;
  n_high: number;
}

export interface CurveResponse {
  curve: CurvePoint[];
  version: string;
}

export interface PowerResponse {
  power: number;
  version: string;
}

/** A 400/422 from the service, carrying its machine-readable code. */
export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number
  ) {
    super(message);
  }
}

export type Payload = Record<string, unknown>;

export async function postOp<T>(
  op: string,
  payload: Payload,
  signal?: AbortSignal,
  baseUrl = ''
): Promise<T> {
  const response = await fetch(`${baseUrl}/api/v1/${op}`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload),
    signal,
  });
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body.code ?? 'error', body.message ?? 'request failed', response.status);
  }
  return body as T;
}
