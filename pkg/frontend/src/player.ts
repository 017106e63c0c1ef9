import type { SoundView } from './types.js';
import { drawWaveform, placeholderPeaks } from './waveform.js';

export interface PlaybackListener {
  onStarted(positionS: number): void;
  onCompleted(positionS: number): void;
}

/** Audio player with a time-frequency image above the controls: the
 * server-supplied spectrogram when present, a client-rendered waveform
 * otherwise. Stays visible while the annotator browses the taxonomy. */
export class Player {
  readonly element: HTMLElement;
  private readonly audio: HTMLAudioElement;

  constructor(
    private readonly sound: SoundView,
    private readonly listener: PlaybackListener,
  ) {
    this.element = document.createElement('section');
    this.element.className = 'player';

    if (sound.spectrogram_uri) {
      const image = document.createElement('img');
      image.className = 'spectrogram';
      image.src = sound.spectrogram_uri;
      image.alt = `spectrogram of ${sound.title}`;
      this.element.appendChild(image);
    } else {
      const canvas = document.createElement('canvas');
      canvas.className = 'waveform';
      canvas.width = 480;
      canvas.height = 96;
      drawWaveform(canvas, placeholderPeaks(sound.audio_uri));
      this.element.appendChild(canvas);
    }

    const title = document.createElement('div');
    title.className = 'player-title';
    title.textContent = `${sound.title} (${sound.duration_s.toFixed(1)} s)`;
    this.element.appendChild(title);

    this.audio = document.createElement('audio');
    this.audio.controls = true;
    this.audio.src = sound.audio_uri;
    this.audio.preload = 'none';
    this.audio.addEventListener('play', () => {
      this.listener.onStarted(this.audio.currentTime || 0);
    });
    this.audio.addEventListener('ended', () => {
      this.listener.onCompleted(this.sound.duration_s);
    });
    this.element.appendChild(this.audio);
  }
}
