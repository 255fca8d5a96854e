/** Page wiring: one Explorer owns the form, the URL, and the three panels.
 *
 * Edits debounce for ~250 ms, then the previous in-flight request generation
 * is aborted and a fresh one (recommend + curve, plus per-point power calls
 * when that panel is open) replaces the views when it lands.
 */

import { ApiError, postOp } from './api';
import type {
  BoundsResponse,
  CurveResponse,
  Payload,
  PowerResponse,
  RecommendResponse,
  RecommendationRow,
} from './api';
import { renderChartMessage, renderCurveChart, renderPowerChart } from './chart';
import type { PowerPoint } from './chart';
import { CATEGORY_LABELS, renderBoundsPanel, renderError, renderRecommendationTable } from './panels';
import {
  boundsPayload,
  decodeState,
  encodeState,
  curvePayload,
  powerPayload,
  recommendPayload,
} from './state';
import type { Category, Measure, Panel, SessionState, Variance } from './state';

export const DEBOUNCE_MS = 250;

/** The power panel queries the API at interior correlations of its own grid;
 * the reported bound endpoints themselves are open and would be rejected. */
export const POWER_GRID_POINTS = 21;

export function powerGrid(lower: number, upper: number): number[] {
  return Array.from(
    { length: POWER_GRID_POINTS },
    (_, i) => lower + (upper - lower) * ((i + 0.5) / POWER_GRID_POINTS)
  );
}

const EFFECT_LABELS: Record<Measure, string> = {
  rd: 'risk differences',
  rr: 'risk ratios',
  or: 'odds ratios',
};

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return `request failed: ${(err as Error).message}`;
}

type Post = <T>(op: string, payload: Payload, signal: AbortSignal) => Promise<T>;

interface ExplorerOptions {
  post?: Post;
  debounceMs?: number;
  initialQuery?: string;
  onUrlChange?: (query: string) => void;
}

function field(labelText: string, input: HTMLElement): HTMLLabelElement {
  const label = document.createElement('label');
  const caption = document.createElement('span');
  caption.textContent = labelText;
  label.append(caption, input);
  return label;
}

function textInput(id: string, value: string): HTMLInputElement {
  const input = document.createElement('input');
  input.type = 'text';
  input.id = id;
  input.value = value;
  input.size = 8;
  return input;
}

function select(id: string, options: [string, string][], value: string): HTMLSelectElement {
  const sel = document.createElement('select');
  sel.id = id;
  for (const [val, label] of options) {
    const opt = document.createElement('option');
    opt.value = val;
    opt.textContent = label;
    sel.append(opt);
  }
  sel.value = value;
  return sel;
}

export class Explorer {
  state: SessionState;
  private readonly post: Post;
  private readonly debounceMs: number;
  private readonly onUrlChange?: (query: string) => void;
  private controller: AbortController | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private lastBounds: BoundsResponse | null = null;
  private lastRecommend: RecommendResponse | null = null;
  private lastCurve: CurveResponse | null = null;
  private lastError = '';

  private readonly messages = document.createElement('div');
  private readonly boundsBox = document.createElement('section');
  private readonly chartBox = document.createElement('section');
  private readonly tableBox = document.createElement('section');
  private inputs: Record<string, HTMLInputElement> = {};
  private measureSel!: HTMLSelectElement;
  private varianceSel!: HTMLSelectElement;
  private intervalToggle!: HTMLInputElement;
  private panelButtons: Record<Panel, HTMLButtonElement> = {} as Record<Panel, HTMLButtonElement>;
  private effectCaption!: HTMLElement;

  constructor(private readonly root: HTMLElement, options: ExplorerOptions = {}) {
    this.post = options.post ?? (<T>(op: string, payload: Payload, signal: AbortSignal) => postOp<T>(op, payload, signal));
    this.debounceMs = options.debounceMs ?? DEBOUNCE_MS;
    this.onUrlChange = options.onUrlChange;
    this.state = decodeState(options.initialQuery ?? '');
    this.buildSkeleton();
    void this.refresh();
  }

  private buildSkeleton(): void {
    this.root.replaceChildren();

    const form = document.createElement('form');
    form.className = 'inputs';
    form.addEventListener('submit', (e) => e.preventDefault());

    this.intervalToggle = document.createElement('input');
    this.intervalToggle.type = 'checkbox';
    this.intervalToggle.id = 'use-intervals';
    this.intervalToggle.checked = this.state.useIntervals;
    form.append(field('rate intervals', this.intervalToggle));

    const addText = (id: string, label: string, value: string) => {
      const input = textInput(id, value);
      this.inputs[id] = input;
      form.append(field(label, input));
      return input;
    };

    addText('p1', 'p1 (control)', this.state.p1);
    addText('p2', 'p2 (control)', this.state.p2);
    addText('p1-lo', 'p1 low', this.state.p1Lo);
    addText('p1-hi', 'p1 high', this.state.p1Hi);
    addText('p2-lo', 'p2 low', this.state.p2Lo);
    addText('p2-hi', 'p2 high', this.state.p2Hi);

    this.measureSel = select(
      'measure',
      [
        ['rd', 'risk difference'],
        ['rr', 'risk ratio'],
        ['or', 'odds ratio'],
      ],
      this.state.measure
    );
    const measureField = field('effect measure', this.measureSel);
    this.effectCaption = measureField.querySelector('span') as HTMLElement;
    form.append(measureField);
    addText('e1', 'effect 1', this.state.e1);
    addText('e2', 'effect 2', this.state.e2);
    addText('alpha', 'alpha (one-sided)', this.state.alpha);
    addText('power', 'target power', this.state.power);

    this.varianceSel = select(
      'variance',
      [
        ['pooled', 'pooled'],
        ['unpooled', 'unpooled'],
      ],
      this.state.variance
    );
    form.append(field('variance', this.varianceSel));

    const toggles = document.createElement('div');
    toggles.className = 'panel-toggle';
    for (const panel of ['n', 'power'] as Panel[]) {
      const button = document.createElement('button');
      button.type = 'button';
      button.textContent = panel === 'n' ? 'sample size' : 'power';
      button.dataset.panel = panel;
      button.addEventListener('click', () => {
        this.state.panel = panel;
        this.schedule(0);
      });
      this.panelButtons[panel] = button;
      toggles.append(button);
    }
    form.append(toggles);

    this.messages.className = 'messages';
    this.boundsBox.className = 'bounds';
    this.chartBox.className = 'chart-box';
    this.tableBox.className = 'table-box';
    this.root.append(form, this.messages, this.boundsBox, this.chartBox, this.tableBox);

    form.addEventListener('input', () => {
      this.readForm();
      this.schedule(this.debounceMs);
    });
    this.syncFormVisibility();
  }

  private readForm(): void {
    const s = this.state;
    s.useIntervals = this.intervalToggle.checked;
    s.p1 = this.inputs['p1'].value;
    s.p2 = this.inputs['p2'].value;
    s.p1Lo = this.inputs['p1-lo'].value;
    s.p1Hi = this.inputs['p1-hi'].value;
    s.p2Lo = this.inputs['p2-lo'].value;
    s.p2Hi = this.inputs['p2-hi'].value;
    s.measure = this.measureSel.value as Measure;
    s.e1 = this.inputs['e1'].value;
    s.e2 = this.inputs['e2'].value;
    s.alpha = this.inputs['alpha'].value;
    s.power = this.inputs['power'].value;
    s.variance = this.varianceSel.value as Variance;
    this.syncFormVisibility();
  }

  private syncFormVisibility(): void {
    const intervals = this.state.useIntervals;
    for (const id of ['p1', 'p2']) {
      (this.inputs[id].parentElement as HTMLElement).hidden = intervals;
    }
    for (const id of ['p1-lo', 'p1-hi', 'p2-lo', 'p2-hi']) {
      (this.inputs[id].parentElement as HTMLElement).hidden = !intervals;
    }
    this.effectCaption.textContent = `effect measure (${EFFECT_LABELS[this.state.measure]})`;
    // achieved power needs point rates; the toggle greys out with intervals
    this.panelButtons.power.disabled = intervals;
    this.panelButtons.power.title = intervals
      ? 'power panel needs point rates'
      : 'achieved power at the recommended n';
    for (const panel of ['n', 'power'] as Panel[]) {
      this.panelButtons[panel].classList.toggle('active', this.state.panel === panel);
    }
  }

  /** Debounce edits; an explicit 0 skips the wait but still coalesces. */
  schedule(delay: number): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.refresh();
    }, delay);
  }

  private selectedRow(): RecommendationRow | undefined {
    return this.lastRecommend?.recommendations.find((r) => r.category === this.state.category);
  }

  private selectCategory(category: Category): void {
    this.state.category = category;
    this.pushUrl();
    this.renderPanels();
    if (this.state.panel === 'power') this.schedule(0);
  }

  private pushUrl(): void {
    const query = encodeState(this.state);
    if (this.onUrlChange) {
      this.onUrlChange(query);
    } else if (typeof history !== 'undefined') {
      history.replaceState(null, '', `?${query}`);
    }
  }

  async refresh(): Promise<void> {
    this.pushUrl();
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;

    let boundsBody: Payload | null;
    let recommendBody: Payload;
    let curveBody: Payload;
    try {
      // feasibility is a point-rate question; interval runs read it off recommend
      boundsBody = this.state.useIntervals ? null : boundsPayload(this.state);
      recommendBody = recommendPayload(this.state);
      curveBody = curvePayload(this.state);
    } catch (err) {
      this.showMessage((err as Error).message);
      return;
    }

    // settled individually: sizing can fail (null effect, infeasibility) while
    // the bounds themselves are still well defined and worth showing
    const [b, r, c] = await Promise.allSettled([
      boundsBody === null
        ? Promise.resolve(null)
        : this.post<BoundsResponse>('bounds', boundsBody, controller.signal),
      this.post<RecommendResponse>('recommend', recommendBody, controller.signal),
      this.post<CurveResponse>('curve', curveBody, controller.signal),
    ]);
    if (controller.signal.aborted) return;
    const failures = [r, c, b].filter(
      (x): x is PromiseRejectedResult => x.status === 'rejected'
    );
    if (failures.some((f) => (f.reason as Error).name === 'AbortError')) return;

    this.lastBounds = b.status === 'fulfilled' ? b.value : null;
    this.lastRecommend = r.status === 'fulfilled' ? r.value : null;
    this.lastCurve = c.status === 'fulfilled' ? c.value : null;
    this.lastError = failures.length === 0 ? '' : describeError(failures[0].reason);
    this.showMessage(this.lastError);
    this.renderPanels();

    if (failures.length === 0 && this.state.panel === 'power' && !this.state.useIntervals) {
      try {
        await this.loadPowerPanel(controller);
      } catch (err) {
        if ((err as Error).name === 'AbortError') return;
        const message = describeError(err);
        this.showMessage(message);
        this.chartBox.replaceChildren(renderChartMessage(message));
      }
    }
  }

  private async loadPowerPanel(controller: AbortController): Promise<void> {
    const row = this.selectedRow();
    const recommend = this.lastRecommend;
    if (!row || !recommend) return;
    const rhos = powerGrid(recommend.bounds.lower, recommend.bounds.upper);
    const responses = await Promise.all(
      rhos.map((rho) =>
        this.post<PowerResponse>('power', powerPayload(this.state, rho, row.n_total), controller.signal)
      )
    );
    if (controller.signal.aborted) return;
    const points: PowerPoint[] = rhos.map((rho, i) => ({
      rho,
      power: responses[i].power,
    }));
    this.chartBox.replaceChildren(
      this.chartCaption(`achieved power at n = ${row.n_total} (${CATEGORY_LABELS[row.category]})`),
      renderPowerChart(points, Number(this.state.power), row)
    );
  }

  private chartCaption(text: string): HTMLElement {
    const caption = document.createElement('p');
    caption.className = 'chart-caption';
    caption.textContent = text;
    return caption;
  }

  private renderPanels(): void {
    const recommend = this.lastRecommend;
    const curve = this.lastCurve;
    const bounds = this.state.useIntervals ? recommend?.bounds : this.lastBounds?.bounds;

    if (bounds) {
      this.boundsBox.replaceChildren(
        renderBoundsPanel(bounds, recommend?.recommendations ?? null)
      );
    } else {
      this.boundsBox.replaceChildren();
    }

    if (recommend) {
      this.tableBox.replaceChildren(
        renderRecommendationTable(recommend, this.state.category, (c) => this.selectCategory(c))
      );
    } else {
      this.tableBox.replaceChildren();
    }

    if (this.state.panel === 'n') {
      if (recommend && curve) {
        this.chartBox.replaceChildren(
          this.chartCaption('total sample size against correlation'),
          renderCurveChart(curve.curve, recommend.recommendations, this.selectedRow())
        );
      } else {
        this.chartBox.replaceChildren(
          renderChartMessage(this.lastError || 'nothing to plot yet')
        );
      }
    }
    this.syncFormVisibility();
  }

  private showMessage(message: string): void {
    this.messages.replaceChildren();
    if (message) this.messages.append(renderError(message));
  }
}

export function bootstrap(): void {
  const root = document.getElementById('app');
  if (root) {
    new Explorer(root, { initialQuery: location.search, debounceMs: DEBOUNCE_MS });
  }
}

// only self-start in a real browser page, not under the test runner
if (typeof document !== 'undefined' && import.meta.env.MODE !== 'test') {
  bootstrap();
}
