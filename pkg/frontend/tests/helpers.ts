/** Shared test plumbing: fixture loading and a fixture-backed post fake.
 *
 * Fixtures under tests/fixtures/ are verbatim service responses (see
 * capture.py there), so asserting against them is asserting against the
 * real wire format.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { ApiError } from '../src/api';
import type { Payload } from '../src/api';

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, 'fixtures', name), 'utf8')) as T;
}

/** The exact inputs capture.py posted; the fake below matches on these. */
export const POINT_PAYLOAD: Payload = {
  p1: 0.095,
  p2: 0.137,
  d1: -0.022,
  d2: -0.027,
  alpha: 0.025,
  power: 0.8,
  variance: 'pooled',
};

export const INTERVAL_PAYLOAD: Payload = {
  p1_interval: [0.07771916990976432, 0.11228083009023568],
  p2_interval: [0.11673511286404706, 0.15726488713595296],
  d1: -0.022,
  d2: -0.027,
  alpha: 0.025,
  power: 0.8,
  variance: 'pooled',
};

export const POINT_MARGINS: Payload = {
  p1: 0.095,
  p2: 0.137,
  d1: -0.022,
  d2: -0.027,
};

export const EQUAL_MARGINS: Payload = {
  p1: 0.5,
  p2: 0.5,
  d1: 0,
  d2: 0,
};

export interface Call {
  op: string;
  payload: Payload;
}

export function abortError(): Error {
  return new DOMException('The operation was aborted.', 'AbortError');
}

function same(a: unknown, b: unknown): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

interface PowerGridFixture {
  n: number;
  rows: { rho: number; response: { power: number } }[];
}

/** Resolves requests from the captured fixtures; unknown payloads fail the
 * test loudly instead of inventing a response. */
export function fixturePost(log: Call[] = []) {
  const powerGrid = fixture<PowerGridFixture>('power_grid.json');
  return async <T>(op: string, payload: Payload, signal: AbortSignal): Promise<T> => {
    if (signal.aborted) throw abortError();
    log.push({ op, payload: JSON.parse(JSON.stringify(payload)) });

    if (op === 'bounds') {
      if (same(payload, POINT_MARGINS)) return fixture<T>('bounds.json');
      if (same(payload, EQUAL_MARGINS)) return fixture<T>('bounds_equal.json');
    }
    if (op === 'recommend') {
      if (same(payload, POINT_PAYLOAD)) return fixture<T>('recommend.json');
      if (same(payload, INTERVAL_PAYLOAD)) return fixture<T>('recommend_intervals.json');
    }
    if (op === 'curve') {
      if (same(payload, POINT_PAYLOAD)) return fixture<T>('curve.json');
      if (same(payload, INTERVAL_PAYLOAD)) return fixture<T>('curve_intervals.json');
    }
    if (op === 'power' && payload.n === powerGrid.n) {
      // exact float match: the panel must request precisely the captured grid
      const hit = powerGrid.rows.find((row) => row.rho === payload.rho);
      if (hit) return hit.response as T;
    }
    throw new ApiError('test.unmatched', `no fixture for ${op} ${JSON.stringify(payload)}`, 422);
  };
}

/** Drain pending microtasks and zero-delay timers under real timers. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
