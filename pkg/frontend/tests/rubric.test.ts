import { describe, expect, it } from 'vitest';

import { MAX_SCORE, MIN_SCORE, TIER_BANDS, isValidScore, tierOf } from '../src/rubric.js';

describe('tier bands', () => {
  it('partition the 1..12 scale exactly', () => {
    const covered: string[] = [];
    for (let score = MIN_SCORE; score <= MAX_SCORE; score += 1) {
      const owners = TIER_BANDS.filter((b) => b.min <= score && score <= b.max);
      expect(owners).toHaveLength(1);
      covered.push(owners[0]!.name);
    }
    expect(new Set(covered)).toEqual(new Set(TIER_BANDS.map((b) => b.name)));
  });

  it('match the six-tier contract', () => {
    expect(TIER_BANDS.map((b) => [b.name, b.min, b.max])).toEqual([
      ['Unacceptable', 1, 3],
      ['Flawed', 4, 5],
      ['Acceptable', 6, 7],
      ['Good', 8, 8],
      ['Excellent', 9, 10],
      ['Exceptional', 11, 12],
    ]);
  });

  it('tierOf resolves every valid score to its band', () => {
    expect(tierOf(1).name).toBe('Unacceptable');
    expect(tierOf(3).name).toBe('Unacceptable');
    expect(tierOf(4).name).toBe('Flawed');
    expect(tierOf(6).name).toBe('Acceptable');
    expect(tierOf(7).name).toBe('Acceptable');
    expect(tierOf(8).name).toBe('Good');
    expect(tierOf(10).name).toBe('Excellent');
    expect(tierOf(12).name).toBe('Exceptional');
  });

  it('tierOf rejects anything outside the integer scale', () => {
    for (const bad of [0, 13, -5, 6.5, NaN, Infinity]) {
      expect(() => tierOf(bad)).toThrow(RangeError);
    }
  });

  it('isValidScore accepts only integers 1..12', () => {
    expect(isValidScore(1)).toBe(true);
    expect(isValidScore(12)).toBe(true);
    expect(isValidScore(0)).toBe(false);
    expect(isValidScore(13)).toBe(false);
    expect(isValidScore(7.5)).toBe(false);
    expect(isValidScore('7')).toBe(false);
    expect(isValidScore(null)).toBe(false);
  });
});
