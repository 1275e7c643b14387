/** Plain linear and band scales. Inversion mirrors the forward mapping
 * exactly so data coordinates attached to pointer events are stable. */

export interface LinearScale {
  lo: number;
  hi: number;
  r0: number;
  r1: number;
}

export function linear(lo: number, hi: number, r0: number, r1: number): LinearScale {
  return { lo, hi, r0, r1 };
}

export function apply(s: LinearScale, v: number): number {
  return s.r0 + ((v - s.lo) * (s.r1 - s.r0)) / (s.hi - s.lo);
}

export function invert(s: LinearScale, px: number): number {
  return s.lo + ((px - s.r0) * (s.hi - s.lo)) / (s.r1 - s.r0);
}

export interface BandScale {
  categories: string[];
  r0: number;
  r1: number;
}

export function band(categories: (string | number)[], r0: number, r1: number): BandScale {
  return { categories: categories.map(String), r0, r1 };
}

export function bandWidth(s: BandScale): number {
  return (s.r1 - s.r0) / Math.max(s.categories.length, 1);
}

export function bandStart(s: BandScale, category: string | number): number {
  const i = s.categories.indexOf(String(category));
  return s.r0 + i * bandWidth(s);
}

export function bandCenter(s: BandScale, category: string | number): number {
  return bandStart(s, category) + bandWidth(s) / 2;
}

export function bandAt(s: BandScale, px: number): string | null {
  if (px < s.r0 || px >= s.r1 || s.categories.length === 0) return null;
  const i = Math.min(
    Math.floor((px - s.r0) / bandWidth(s)),
    s.categories.length - 1,
  );
  return s.categories[i];
}
