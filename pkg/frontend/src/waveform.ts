// Waveform rendering for the player's fallback display (used when the
// server supplies no spectrogram image). Peaks are amplitudes in [0, 1].

export function peaksFromSamples(samples: Float32Array, buckets = 96): number[] {
  if (buckets < 1) throw new RangeError(`buckets must be >= 1, got ${buckets}`);
  const peaks = new Array<number>(buckets).fill(0);
  if (samples.length === 0) return peaks;
  const perBucket = samples.length / buckets;
  for (let i = 0; i < samples.length; i++) {
    const bucket = Math.min(buckets - 1, Math.floor(i / perBucket));
    const amplitude = Math.min(1, Math.abs(samples[i]));
    if (amplitude > peaks[bucket]) peaks[bucket] = amplitude;
  }
  return peaks;
}

/** Deterministic stand-in peaks derived from a seed string, for clips whose
 * raw audio cannot be decoded in the current environment. */
export function placeholderPeaks(seed: string, buckets = 96): number[] {
  const peaks = new Array<number>(buckets);
  let state = 2166136261;
  for (let i = 0; i < seed.length; i++) {
    state = Math.imul(state ^ seed.charCodeAt(i), 16777619) >>> 0;
  }
  for (let i = 0; i < buckets; i++) {
    state = (Math.imul(state, 1664525) + 1013904223) >>> 0;
    const envelope = Math.sin((Math.PI * (i + 1)) / (buckets + 1));
    peaks[i] = 0.15 + 0.85 * envelope * ((state >>> 8) / 0xffffff);
  }
  return peaks;
}

export function drawWaveform(canvas: HTMLCanvasElement, peaks: number[], color = '#4a7dbd'): void {
  const ctx = canvas.getContext('2d');
  if (!ctx) return; // canvas 2d is unavailable in some test environments
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = color;
  const barWidth = width / peaks.length;
  const mid = height / 2;
  for (let i = 0; i < peaks.length; i++) {
    const barHeight = Math.max(1, peaks[i] * height);
    ctx.fillRect(i * barWidth, mid - barHeight / 2, Math.max(1, barWidth - 1), barHeight);
  }
}
