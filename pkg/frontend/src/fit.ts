/** Least-squares fit of log(total) against log(mu), mirroring the fit the
 * simulation package reports. */

export interface Fit {
  slope: number;
  intercept: number;
  r2: number;
}

export function fitExponent(mus: number[], totals: number[]): Fit {
  if (mus.length !== totals.length || mus.length < 3) {
    throw new Error("fit needs at least three (mu, total) pairs");
  }
  if (mus.some((m) => m <= 0) || totals.some((t) => t <= 0)) {
    throw new Error("fit needs positive mu and total values");
  }
  const x = mus.map(Math.log);
  const y = totals.map(Math.log);
  const nPts = x.length;
  const mx = x.reduce((a, b) => a + b, 0) / nPts;
  const my = y.reduce((a, b) => a + b, 0) / nPts;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < nPts; i++) {
    sxx += (x[i] - mx) ** 2;
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const slope = sxy / sxx;
  const intercept = my - slope * mx;
  let ssRes = 0;
  let ssTot = 0;
  for (let i = 0; i < nPts; i++) {
    ssRes += (y[i] - slope * x[i] - intercept) ** 2;
    ssTot += (y[i] - my) ** 2;
  }
  const r2 = ssTot === 0 ? 1 : 1 - ssRes / ssTot;
  return { slope, intercept, r2 };
}
