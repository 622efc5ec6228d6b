import { describe, expect, it } from 'vitest';

import { fmt1, parseNonNegative, roundHalfEven } from '../src/format';

describe('display rounding', () => {
  it('rounds to one decimal, half to even', () => {
    expect(fmt1(789.75)).toBe('789.8');
    expect(fmt1(152.85)).toBe('152.8');
    expect(fmt1(3200)).toBe('3200.0');
    expect(fmt1(0.04)).toBe('0.0');
  });

  it('roundHalfEven handles exact halves both ways', () => {
    expect(roundHalfEven(0.25, 1)).toBe(0.2);
    expect(roundHalfEven(0.35, 1)).toBe(0.4);
  });
});

describe('form parsing', () => {
  it('accepts non-negative numbers', () => {
    expect(parseNonNegative(' 42.5 ')).toBe(42.5);
    expect(parseNonNegative('0')).toBe(0);
  });

  it('rejects negatives, blanks and junk', () => {
    expect(parseNonNegative('-1')).toBeNull();
    expect(parseNonNegative('')).toBeNull();
    expect(parseNonNegative('abc')).toBeNull();
    expect(parseNonNegative('Infinity')).toBeNull();
  });
});
