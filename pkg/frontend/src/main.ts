import { ApiClient } from './api.js';
import { App } from './app.js';

function bootstrap(): void {
  const mount = document.getElementById('app');
  if (!mount) throw new Error('missing #app mount point');
  const annotator =
    new URLSearchParams(window.location.search).get('annotator') ?? 'anonymous';
  const app = new App(mount, new ApiClient('', annotator));
  void app.start();
}

if (document.readyState === 'loading') {
  document.addEventListener('DOMContentLoaded', bootstrap);
} else {
  bootstrap();
}
