/** Bounds panel and recommendation table. Pure DOM builders: they take API
 * responses and return elements, so tests can feed them captured fixtures. */

import type { BoundsFragment, RecommendResponse, RecommendationRow } from './api';
import type { Category } from './state';
import { nSpan, probSpan, span } from './format';

export const CATEGORY_LABELS: Record<Category, string> = {
  weak: 'weak',
  moderate: 'moderate',
  strong: 'strong',
  no_prior: 'no prior',
};

/** Bounds always render when feasibility is known; breakpoints only when a
 * recommend response is available (they are its weak/moderate endpoints). */
export function renderBoundsPanel(
  bounds: BoundsFragment,
  rows: RecommendationRow[] | null = null
): HTMLElement {
  const panel = document.createElement('div');
  panel.className = 'bounds-panel';

  const headline = document.createElement('p');
  headline.append(
    'Feasible correlation: ',
    probSpan(bounds.lower),
    ' to ',
    probSpan(bounds.upper)
  );
  panel.append(headline);

  // category breakpoints are the upper endpoints of weak and moderate
  const byCategory = new Map((rows ?? []).map((r) => [r.category, r]));
  const weak = byCategory.get('weak');
  const moderate = byCategory.get('moderate');
  if (weak && moderate) {
    const breaks = document.createElement('p');
    breaks.className = 'breakpoints';
    breaks.append(
      'Category breakpoints: weak up to ',
      probSpan(weak.rho_interval[1]),
      ', moderate up to ',
      probSpan(moderate.rho_interval[1])
    );
    panel.append(breaks);
  }
  return panel;
}

function rowElement(row: RecommendationRow, selected: boolean): HTMLTableRowElement {
  const tr = document.createElement('tr');
  tr.dataset.category = row.category;
  if (selected) tr.className = 'selected';

  const name = document.createElement('td');
  name.textContent = CATEGORY_LABELS[row.category];
  tr.append(name);

  const interval = document.createElement('td');
  interval.append(probSpan(row.rho_interval[0]), ' to ', probSpan(row.rho_interval[1]));
  tr.append(interval);

  const n = document.createElement('td');
  n.className = 'n-total';
  n.append(nSpan(row.n_total));
  tr.append(n);

  const power = document.createElement('td');
  power.append(probSpan(row.power_range[0]), ' to ', probSpan(row.power_range[1]));
  tr.append(power);

  return tr;
}

export function renderRecommendationTable(
  response: RecommendResponse,
  selected: Category,
  onSelect?: (category: Category) => void
): HTMLTableElement {
  const table = document.createElement('table');
  table.className = 'recommendations';

  const head = table.createTHead().insertRow();
  for (const label of ['prior', 'correlation interval', 'n total', 'power range']) {
    const th = document.createElement('th');
    th.textContent = label;
    head.append(th);
  }

  const body = table.createTBody();
  for (const row of response.recommendations) {
    const tr = rowElement(row, row.category === selected);
    if (onSelect) {
      tr.addEventListener('click', () => onSelect(row.category));
    }
    body.append(tr);
  }
  return table;
}

export function renderError(message: string): HTMLElement {
  const el = document.createElement('p');
  el.className = 'error';
  el.append(span(message, message, 'error-message'));
  return el;
}
