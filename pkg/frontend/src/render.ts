/** SVG renderers: log-log scaling plot, per-term energy stack, and
 * domain-pattern images. Pure string generation, no DOM. */

import { Field, SweepRecord } from "./formats.js";
import { fitExponent } from "./fit.js";

// fixed well colors; label bit 0 flips the first component, bit 1 the
// second, so 0:(+,+) 1:(-,+) 2:(+,-) 3:(-,-) up to the 1/sqrt(2) scale
export const WELL_COLORS = ["#d95f02", "#1b9e77", "#7570b3", "#e7298a"];
export const WELL_LEGEND = ["(+,+)", "(-,+)", "(+,-)", "(-,-)"];

const TERM_KEYS = ["wall", "potential", "magnetostatic", "magnetostriction"] as const;
const TERM_COLORS = ["#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3"];

const W = 640;
const H = 480;
const MARGIN = { left: 70, right: 20, top: 30, bottom: 50 };

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function svgDoc(width: number, height: number, body: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}" ` +
    `font-family="sans-serif" font-size="12">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body + `</svg>\n`;
}

function linScale(lo: number, hi: number, a: number, b: number) {
  const d = hi - lo || 1;
  return (v: number) => a + ((v - lo) / d) * (b - a);
}

function fmt(v: number): string {
  const a = Math.abs(v);
  return a !== 0 && (a < 1e-2 || a >= 1e4) ? v.toExponential(0) : String(v);
}

/** Log-log scatter of total against mu with the fitted line annotated.
 * Fits the non-comparator rows; comparator rows (mode "landau") are drawn
 * as open squares for reference. */
export function renderScaling(records: SweepRecord[]): string {
  const main = records.filter((r) => r.mode !== "landau");
  const comparator = records.filter((r) => r.mode === "landau");
  const fit = fitExponent(main.map((r) => r.mu), main.map((r) => r.total));
  const all = records;
  const lx = all.map((r) => Math.log10(r.mu));
  const ly = all.map((r) => Math.log10(r.total));
  const x = linScale(Math.min(...lx), Math.max(...lx), MARGIN.left, W - MARGIN.right);
  const y = linScale(Math.min(...ly), Math.max(...ly), H - MARGIN.bottom, MARGIN.top);
  let body = "";
  // axes
  body += `<line x1="${MARGIN.left}" y1="${H - MARGIN.bottom}" x2="${W - MARGIN.right}" y2="${H - MARGIN.bottom}" stroke="black"/>\n`;
  body += `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${H - MARGIN.bottom}" stroke="black"/>\n`;
  for (const r of all) {
    const tx = x(Math.log10(r.mu));
    body += `<text x="${tx.toFixed(1)}" y="${H - MARGIN.bottom + 16}" text-anchor="middle">${fmt(r.mu)}</text>\n`;
  }
  body += `<text x="${(MARGIN.left + W - MARGIN.right) / 2}" y="${H - 10}" text-anchor="middle">mu</text>\n`;
  body += `<text x="16" y="${(MARGIN.top + H - MARGIN.bottom) / 2}" text-anchor="middle" transform="rotate(-90 16 ${(MARGIN.top + H - MARGIN.bottom) / 2})">total energy</text>\n`;
  // fitted line over the mu range of the fitted rows
  const ends = [Math.min(...main.map((r) => Math.log10(r.mu))),
                Math.max(...main.map((r) => Math.log10(r.mu)))];
  const lineY = ends.map((e) => (fit.slope * e * Math.LN10 + fit.intercept) / Math.LN10);
  body += `<line x1="${x(ends[0]).toFixed(1)}" y1="${y(lineY[0]).toFixed(1)}" ` +
    `x2="${x(ends[1]).toFixed(1)}" y2="${y(lineY[1]).toFixed(1)}" ` +
    `stroke="#d95f02" stroke-width="2"/>\n`;
  for (const r of main) {
    body += `<circle cx="${x(Math.log10(r.mu)).toFixed(1)}" cy="${y(Math.log10(r.total)).toFixed(1)}" r="4" fill="#1b9e77"/>\n`;
  }
  for (const r of comparator) {
    const cx = x(Math.log10(r.mu));
    const cy = y(Math.log10(r.total));
    body += `<rect x="${(cx - 4).toFixed(1)}" y="${(cy - 4).toFixed(1)}" width="8" height="8" fill="none" stroke="#7570b3" stroke-width="1.5"/>\n`;
  }
  body += `<text x="${W - MARGIN.right}" y="${MARGIN.top - 10}" text-anchor="end">` +
    `slope = ${fit.slope.toFixed(3)}, r^2 = ${fit.r2.toFixed(4)}</text>\n`;
  return svgDoc(W, H, body);
}

/** One stacked bar per sweep row: the share of each energy term. */
export function renderStack(records: SweepRecord[]): string {
  const rows = records.filter((r) => r.mode !== "landau");
  if (rows.length === 0) throw new Error("stack plot needs at least one row");
  const barW = (W - MARGIN.left - MARGIN.right) / rows.length;
  const y = linScale(0, 1, H - MARGIN.bottom, MARGIN.top);
  let body = "";
  rows.forEach((r, i) => {
    const total = TERM_KEYS.reduce((acc, k) => acc + Math.abs(r[k]), 0) || 1;
    let acc = 0;
    TERM_KEYS.forEach((key, t) => {
      const share = Math.abs(r[key]) / total;
      const y0 = y(acc + share);
      const h = y(acc) - y0;
      body += `<rect x="${(MARGIN.left + i * barW + 2).toFixed(1)}" y="${y0.toFixed(1)}" ` +
        `width="${(barW - 4).toFixed(1)}" height="${h.toFixed(1)}" fill="${TERM_COLORS[t]}"/>\n`;
      acc += share;
    });
    body += `<text x="${(MARGIN.left + (i + 0.5) * barW).toFixed(1)}" y="${H - MARGIN.bottom + 16}" text-anchor="middle">${fmt(r.mu)}</text>\n`;
  });
  TERM_KEYS.forEach((key, t) => {
    const lx = MARGIN.left + t * 135;
    body += `<rect x="${lx}" y="${H - 24}" width="10" height="10" fill="${TERM_COLORS[t]}"/>\n`;
    body += `<text x="${lx + 14}" y="${H - 15}">${esc(key)}</text>\n`;
  });
  body += `<text x="${(MARGIN.left + W - MARGIN.right) / 2}" y="${MARGIN.top - 12}" text-anchor="middle">energy share per term over mu</text>\n`;
  return svgDoc(W, H, body);
}

function hsl(angle: number, mag: number): string {
  const deg = ((angle * 180) / Math.PI + 360) % 360;
  const sat = Math.round(100 * Math.min(1, mag));
  return `hsl(${deg.toFixed(0)},${sat}%,50%)`;
}

function gray(v: number, lo: number, hi: number): string {
  const t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  const g = Math.round(255 * t);
  return `rgb(${g},${g},${g})`;
}

/** Domain image: well colors for spin fields, hue-by-angle for vector
 * fields, grayscale for scalars. Row i of the file is the x index, so it
 * runs horizontally here; the y index points up. */
export function renderPattern(field: Field, maxCells = 256): string {
  const n = field.n;
  const stride = Math.max(1, Math.ceil(n / maxCells));
  const m = Math.floor(n / stride);
  const cell = Math.max(1, Math.floor(512 / m));
  const size = m * cell;
  let lo = Infinity;
  let hi = -Infinity;
  if (field.kind === "scalar") {
    for (const row of field.values) for (const v of row) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  let body = "";
  for (let i = 0; i < m; i++) {
    for (let j = 0; j < m; j++) {
      const vi = i * stride;
      const vj = j * stride;
      let fill: string;
      if (field.kind === "spin") {
        fill = WELL_COLORS[field.values[vi][vj]];
      } else if (field.kind === "vector") {
        const [a, b] = field.values[vi][vj];
        fill = hsl(Math.atan2(b, a), Math.hypot(a, b));
      } else {
        fill = gray(field.values[vi][vj], lo, hi);
      }
      const px = i * cell;
      const py = (m - 1 - j) * cell;
      body += `<rect x="${px}" y="${py}" width="${cell}" height="${cell}" fill="${fill}"/>\n`;
    }
  }
  let legend = "";
  if (field.kind === "spin") {
    WELL_LEGEND.forEach((label, w) => {
      legend += `<rect x="${10 + w * 90}" y="${size + 8}" width="12" height="12" fill="${WELL_COLORS[w]}"/>\n`;
      legend += `<text x="${26 + w * 90}" y="${size + 19}">${esc(label)}</text>\n`;
    });
  } else {
    legend += `<text x="10" y="${size + 19}">${field.kind} field, n=${n}</text>\n`;
  }
  return svgDoc(size, size + 30, body + legend);
}
