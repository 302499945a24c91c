/**
 * Twelve-point rating scale partitioned into six named quality tiers.
 *
 * The bands here must stay identical to the server's partition: every
 * integer 1..12 belongs to exactly one tier, and the tier label shown next
 * to a selected score is always derived through tierOf.
 */

export interface TierBand {
  name: string;
  min: number;
  max: number;
  description: string;
}

export const MIN_SCORE = 1;
export const MAX_SCORE = 12;

export const TIER_BANDS: readonly TierBand[] = [
  {
    name: 'Unacceptable',
    min: 1,
    max: 3,
    description: 'Fails dramatic requirements; significant logical errors or incoherence.',
  },
  {
    name: 'Flawed',
    min: 4,
    max: 5,
    description: 'Falls short of dramatic requirements; notable logic or coherence problems.',
  },
  {
    name: 'Acceptable',
    min: 6,
    max: 7,
    description: 'Meets the core dramatic requirements despite minor issues.',
  },
  {
    name: 'Good',
    min: 8,
    max: 8,
    description: 'Solid execution across prompt adherence, structure, and coherence.',
  },
  {
    name: 'Excellent',
    min: 9,
    max: 10,
    description: 'Strong narrative structure with perfect adherence to prompt and logic.',
  },
  {
    name: 'Exceptional',
    min: 11,
    max: 12,
    description: 'Flawless execution; directly usable.',
  },
] as const;

export function isValidScore(score: unknown): score is number {
  return typeof score === 'number' && Number.isInteger(score) && score >= MIN_SCORE && score <= MAX_SCORE;
}

export function tierOf(score: number): TierBand {
  if (!isValidScore(score)) {
    throw new RangeError(`score ${String(score)} outside [${MIN_SCORE}, ${MAX_SCORE}]`);
  }
  const band = TIER_BANDS.find((b) => b.min <= score && score <= b.max);
  if (!band) throw new Error('unreachable: tier bands partition the scale');
  return band;
}
