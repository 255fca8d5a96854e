/** Form state and its two serializations: the shareable URL and the API
 * request payloads. The invariant that matters is encode -> decode -> same
 * payloads, so a pasted URL reproduces the exact requests. */

import type { Payload } from './api';

export type Measure = 'rd' | 'rr' | 'or';
export type Variance = 'pooled' | 'unpooled';
export type Category = 'weak' | 'moderate' | 'strong' | 'no_prior';
export type Panel = 'n' | 'power';

/** Raw form text is kept verbatim; parsing happens when payloads are built. */
export interface SessionState {
  useIntervals: boolean;
  p1: string;
  p2: string;
  p1Lo: string;
  p1Hi: string;
  p2Lo: string;
  p2Hi: string;
  measure: Measure;
  e1: string;
  e2: string;
  alpha: string;
  power: string;
  variance: Variance;
  category: Category;
  panel: Panel;
}

export const DEFAULTS: SessionState = {
  useIntervals: false,
  p1: '0.095',
  p2: '0.137',
  p1Lo: '0.078',
  p1Hi: '0.112',
  p2Lo: '0.117',
  p2Hi: '0.157',
  measure: 'rd',
  e1: '-0.022',
  e2: '-0.027',
  alpha: '0.025',
  power: '0.8',
  variance: 'pooled',
  category: 'strong',
  panel: 'n',
};

const EFFECT_KEYS: Record<Measure, [string, string]> = {
  rd: ['d1', 'd2'],
  rr: ['r1', 'r2'],
  or: ['o1', 'o2'],
};

function num(text: string, field: string): number {
  const value = Number(text);
  if (text.trim() === '' || !Number.isFinite(value)) {
    throw new Error(`${field} must be a number`);
  }
  return value;
}

function pair(lo: string, hi: string, field: string): [number, number] {
  return [num(lo, field), num(hi, field)];
}

function ratePart(s: SessionState): Payload {
  if (s.useIntervals) {
    return {
      p1_interval: pair(s.p1Lo, s.p1Hi, 'p1 interval'),
      p2_interval: pair(s.p2Lo, s.p2Hi, 'p2 interval'),
    };
  }
  return { p1: num(s.p1, 'p1'), p2: num(s.p2, 'p2') };
}

function effectPart(s: SessionState): Payload {
  const [k1, k2] = EFFECT_KEYS[s.measure];
  return { [k1]: num(s.e1, k1), [k2]: num(s.e2, k2) };
}

function designPart(s: SessionState): Payload {
  return {
    alpha: num(s.alpha, 'alpha'),
    power: num(s.power, 'power'),
    variance: s.variance,
  };
}

/** Feasibility needs only the margins; the op takes no design fields.
 * Point rates only: interval inputs get their bounds from recommend. */
export function boundsPayload(s: SessionState): Payload {
  return { p1: num(s.p1, 'p1'), p2: num(s.p2, 'p2'), ...effectPart(s) };
}

/** Throws with a field-level message when the form cannot be parsed yet. */
export function recommendPayload(s: SessionState): Payload {
  return { ...ratePart(s), ...effectPart(s), ...designPart(s) };
}

export function curvePayload(s: SessionState): Payload {
  return { ...ratePart(s), ...effectPart(s), ...designPart(s) };
}

/** Power is evaluated at one correlation for a fixed n (point rates only). */
export function powerPayload(s: SessionState, rho: number, n: number): Payload {
  return {
    p1: num(s.p1, 'p1'),
    p2: num(s.p2, 'p2'),
    ...effectPart(s),
    ...designPart(s),
    rho,
    n,
  };
}

export function encodeState(s: SessionState): string {
  const params = new URLSearchParams();
  if (s.useIntervals) {
    params.set('p1_interval', `${s.p1Lo},${s.p1Hi}`);
    params.set('p2_interval', `${s.p2Lo},${s.p2Hi}`);
  } else {
    params.set('p1', s.p1);
    params.set('p2', s.p2);
  }
  const [k1, k2] = EFFECT_KEYS[s.measure];
  params.set(k1, s.e1);
  params.set(k2, s.e2);
  // defaults stay out of the URL to keep it short and stable
  if (s.alpha !== DEFAULTS.alpha) params.set('alpha', s.alpha);
  if (s.power !== DEFAULTS.power) params.set('power', s.power);
  if (s.variance !== DEFAULTS.variance) params.set('variance', s.variance);
  if (s.category !== DEFAULTS.category) params.set('category', s.category);
  if (s.panel !== DEFAULTS.panel) params.set('panel', s.panel);
  return params.toString();
}

function splitPair(text: string): [string, string] | null {
  const parts = text.split(',');
  return parts.length === 2 ? [parts[0], parts[1]] : null;
}

export function decodeState(query: string): SessionState {
  const params = new URLSearchParams(query);
  const s: SessionState = { ...DEFAULTS };

  const i1 = params.get('p1_interval');
  const i2 = params.get('p2_interval');
  if (i1 !== null && i2 !== null) {
    const a = splitPair(i1);
    const b = splitPair(i2);
    if (a && b) {
      s.useIntervals = true;
      [s.p1Lo, s.p1Hi] = a;
      [s.p2Lo, s.p2Hi] = b;
    }
  } else {
    s.p1 = params.get('p1') ?? s.p1;
    s.p2 = params.get('p2') ?? s.p2;
  }

  for (const measure of Object.keys(EFFECT_KEYS) as Measure[]) {
    const [k1, k2] = EFFECT_KEYS[measure];
    const e1 = params.get(k1);
    const e2 = params.get(k2);
    if (e1 !== null && e2 !== null) {
      s.measure = measure;
      s.e1 = e1;
      s.e2 = e2;
      break;
    }
  }

  s.alpha = params.get('alpha') ?? s.alpha;
  s.power = params.get('power') ?? s.power;
  const variance = params.get('variance');
  if (variance === 'pooled' || variance === 'unpooled') s.variance = variance;
  const category = params.get('category');
  if (category === 'weak' || category === 'moderate' || category === 'strong' || category === 'no_prior') {
    s.category = category;
  }
  const panel = params.get('panel');
  if (panel === 'n' || panel === 'power') s.panel = panel;
  return s;
}
