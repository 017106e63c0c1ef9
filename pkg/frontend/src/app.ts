import { ApiError, type ApiClient } from './api.js';
import { GenerationView } from './generation.js';
import { RefinementView } from './refinement.js';

export type Route = { kind: 'home' } | { kind: 'task'; taskId: string };

export function parseRoute(hash: string): Route {
  const match = /^#\/task\/(.+)$/.exec(hash);
  if (match) return { kind: 'task', taskId: match[1] };
  return { kind: 'home' };
}

/** Hash-routed single-page shell.
 *
 * The home screen lists sounds with buttons that create a task and navigate
 * to it; task screens are addressed by id, so reloading the page lands back
 * on the same task and rebuilds it from the server. */
export class App {
  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async start(): Promise<void> {
    window.addEventListener('hashchange', () => {
      void this.route();
    });
    await this.route();
  }

  async route(): Promise<void> {
    this.root.textContent = '';
    const route = parseRoute(window.location.hash);
    try {
      if (route.kind === 'home') {
        await this.renderHome();
      } else {
        await this.renderTask(route.taskId);
      }
    } catch (error) {
      const message = document.createElement('p');
      message.className = 'error-box';
      message.textContent =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
      this.root.appendChild(message);
    }
  }

  private async renderHome(): Promise<void> {
    const heading = document.createElement('h2');
    heading.textContent = 'Sounds';
    this.root.appendChild(heading);

    const list = document.createElement('ul');
    list.className = 'sound-list';
    for (const sound of await this.api.sounds()) {
      const item = document.createElement('li');
      item.className = 'sound-item';
      item.dataset.id = sound.sound_id;

      const title = document.createElement('span');
      title.textContent = `${sound.title} (${sound.duration_s.toFixed(1)} s)`;
      item.appendChild(title);

      const generate = document.createElement('button');
      generate.type = 'button';
      generate.className = 'start-generation';
      generate.textContent = 'generate labels';
      generate.addEventListener('click', () => {
        void this.startTask('generation', sound.sound_id);
      });
      item.appendChild(generate);

      const refine = document.createElement('button');
      refine.type = 'button';
      refine.className = 'start-refinement';
      refine.textContent = 'refine labels';
      refine.addEventListener('click', () => {
        void this.startTask('refinement', sound.sound_id);
      });
      item.appendChild(refine);

      list.appendChild(item);
    }
    this.root.appendChild(list);
  }

  async startTask(kind: 'generation' | 'refinement', soundId: string): Promise<void> {
    const view =
      kind === 'generation'
        ? await this.api.createGenerationTask(soundId)
        : await this.api.createRefinementTask(soundId);
    window.location.hash = `#/task/${view.task_id}`;
  }

  private async renderTask(taskId: string): Promise<void> {
    const view = await this.api.task(taskId);
    const back = document.createElement('a');
    back.href = '#/';
    back.textContent = '← all sounds';
    this.root.appendChild(back);
    if (view.kind === 'generation') {
      const screen = new GenerationView(this.api, taskId);
      this.root.appendChild(screen.element);
      await screen.load();
    } else {
      const screen = new RefinementView(this.api, taskId);
      this.root.appendChild(screen.element);
      await screen.load();
    }
  }
}
