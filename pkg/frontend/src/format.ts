/** Display formatting. Two decimals for probabilities and correlations, plain
 * integers for sample sizes; the unrounded API value always rides along in
 * the element's title so hovering reveals full precision. */

export function fmt2(value: number): string {
  return value.toFixed(2);
}

export function fmtN(value: number): string {
  return String(value);
}

export function fullPrecision(value: number): string {
  return String(value);
}

export function span(text: string, title: string, className?: string): HTMLSpanElement {
  const el = document.createElement('span');
  el.textContent = text;
  el.title = title;
  if (className) el.className = className;
  return el;
}

/** A span showing a 2-decimal probability/correlation, full value on hover. */
export function probSpan(value: number): HTMLSpanElement {
  return span(fmt2(value), fullPrecision(value));
}

/** A span showing an integer sample size, raw API value on hover. */
export function nSpan(value: number): HTMLSpanElement {
  return span(fmtN(value), fullPrecision(value));
}
