import { describe, expect, it } from 'vitest';
import { drawWaveform, peaksFromSamples, placeholderPeaks } from '../src/waveform.js';

describe('peaksFromSamples', () => {
  it('keeps the maximum absolute amplitude per bucket', () => {
    const peaks = peaksFromSamples(new Float32Array([0.5, -1, 0, 0.25]), 2);
    expect(peaks).toEqual([1, 0.25]);
  });

  it('clamps amplitudes to 1', () => {
    expect(peaksFromSamples(new Float32Array([2.5]), 1)).toEqual([1]);
  });

  it('always returns the requested bucket count', () => {
    expect(peaksFromSamples(new Float32Array(10), 4)).toHaveLength(4);
    expect(peaksFromSamples(new Float32Array(0), 3)).toEqual([0, 0, 0]);
  });

  it('rejects a non-positive bucket count', () => {
    expect(() => peaksFromSamples(new Float32Array(4), 0)).toThrow(RangeError);
  });
});

describe('placeholderPeaks', () => {
  it('is deterministic for a given seed', () => {
    expect(placeholderPeaks('audio/s01.wav')).toEqual(placeholderPeaks('audio/s01.wav'));
  });

  it('varies with the seed', () => {
    const a = placeholderPeaks('audio/s01.wav');
    const b = placeholderPeaks('audio/s02.wav');
    expect(a).not.toEqual(b);
  });

  it('stays within the visible amplitude band', () => {
    for (const peak of placeholderPeaks('anything', 256)) {
      expect(peak).toBeGreaterThanOrEqual(0.15);
      expect(peak).toBeLessThanOrEqual(1);
    }
  });
});

describe('drawWaveform', () => {
  it('tolerates environments without canvas 2d', () => {
    const canvas = document.createElement('canvas');
    expect(() => drawWaveform(canvas, placeholderPeaks('seed'))).not.toThrow();
  });
});
