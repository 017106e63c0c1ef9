import { ApiError, type ApiClient } from './api.js';
import { Player } from './player.js';
import { TaxonomyTable } from './taxonomy-table.js';
import type { CategoryId, TaskView } from './types.js';

/** Label-generation task screen.
 *
 * Renders purely from the server's task view: the selected-label list, the
 * effort gate state and the metadata panel are all re-derived after every
 * mutation, so a page reload reconstructs the exact same screen. */
export class GenerationView {
  readonly element: HTMLElement;
  readonly table: TaxonomyTable;

  private view: TaskView | null = null;
  private player: Player | null = null;
  private readonly names = new Map<CategoryId, string>();

  private readonly statusLine: HTMLElement;
  private readonly playerMount: HTMLElement;
  private readonly metadataButton: HTMLButtonElement;
  private readonly metadataPanel: HTMLElement;
  private readonly labelsList: HTMLElement;
  private readonly submitButton: HTMLButtonElement;
  private readonly errorBox: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    private readonly taskId: string,
  ) {
    this.element = document.createElement('section');
    this.element.className = 'generation-view';

    this.statusLine = document.createElement('p');
    this.statusLine.className = 'task-status';
    this.element.appendChild(this.statusLine);

    this.errorBox = document.createElement('p');
    this.errorBox.className = 'error-box';
    this.errorBox.hidden = true;
    this.element.appendChild(this.errorBox);

    this.playerMount = document.createElement('div');
    this.playerMount.className = 'player-mount';
    this.element.appendChild(this.playerMount);

    this.metadataButton = document.createElement('button');
    this.metadataButton.type = 'button';
    this.metadataButton.className = 'metadata-request';
    this.metadataButton.textContent = 'show uploader metadata';
    this.metadataButton.addEventListener('click', () => {
      void this.requestMetadata();
    });
    this.element.appendChild(this.metadataButton);

    this.metadataPanel = document.createElement('div');
    this.metadataPanel.className = 'metadata-panel';
    this.metadataPanel.hidden = true;
    this.element.appendChild(this.metadataPanel);

    const labelsHeading = document.createElement('h3');
    labelsHeading.textContent = 'Selected labels';
    this.element.appendChild(labelsHeading);

    this.labelsList = document.createElement('ul');
    this.labelsList.className = 'selected-labels';
    this.element.appendChild(this.labelsList);

    this.submitButton = document.createElement('button');
    this.submitButton.type = 'button';
    this.submitButton.className = 'submit-task';
    this.submitButton.textContent = 'submit labels';
    this.submitButton.addEventListener('click', () => {
      void this.submit();
    });
    this.element.appendChild(this.submitButton);

    this.table = new TaxonomyTable(this.api, {
      onSelect: (categoryId) => this.addLabel(categoryId),
    });
    this.element.appendChild(this.table.element);
  }

  currentView(): TaskView | null {
    return this.view;
  }

  async load(): Promise<void> {
    const view = await this.api.task(this.taskId);
    await this.table.load();
    await this.applyView(view);
  }

  async addLabel(categoryId: CategoryId): Promise<void> {
    try {
      const view = await this.api.addLabel(this.taskId, categoryId);
      await this.applyView(view);
    } catch (error) {
      this.showError(error);
    }
  }

  async removeLabel(categoryId: CategoryId): Promise<void> {
    try {
      const view = await this.api.removeLabel(this.taskId, categoryId);
      await this.applyView(view);
    } catch (error) {
      this.showError(error);
    }
  }

  async requestMetadata(): Promise<void> {
    try {
      await this.api.requestMetadata(this.taskId);
      const view = await this.api.task(this.taskId);
      await this.applyView(view);
    } catch (error) {
      this.showError(error);
    }
  }

  async submit(): Promise<void> {
    try {
      const response = await this.api.submit(this.taskId);
      await this.applyView(response.task);
      this.statusLine.textContent = `submitted ${response.annotations.length} label(s)`;
    } catch (error) {
      this.showError(error);
    }
  }

  private async recordPlayback(kind: 'started' | 'completed', positionS: number): Promise<void> {
    try {
      const view = await this.api.recordPlayback(this.taskId, kind, positionS);
      await this.applyView(view);
    } catch (error) {
      this.showError(error);
    }
  }

  private async applyView(view: TaskView): Promise<void> {
    this.view = view;
    this.errorBox.hidden = true;
    this.errorBox.textContent = '';

    if (!this.player) {
      this.player = new Player(view.sound, {
        onStarted: (positionS) => void this.recordPlayback('started', positionS),
        onCompleted: (positionS) => void this.recordPlayback('completed', positionS),
      });
      this.playerMount.appendChild(this.player.element);
    }

    const submitted = view.state === 'submitted';
    this.statusLine.textContent = submitted
      ? `task submitted at ${view.submitted_at ?? ''}`
      : `labeling ${view.sound.title}`;

    this.metadataButton.disabled =
      submitted || view.metadata_revealed || !view.gate_satisfied;
    this.metadataButton.title = view.gate_satisfied
      ? ''
      : 'listen to the clip first';

    const metadata = view.sound.metadata;
    if (view.metadata_revealed && metadata) {
      this.metadataPanel.hidden = false;
      this.metadataPanel.textContent = '';
      const description = document.createElement('p');
      description.className = 'metadata-description';
      description.textContent = metadata.description;
      this.metadataPanel.appendChild(description);
      const tags = document.createElement('p');
      tags.className = 'metadata-tags';
      tags.textContent = metadata.tags.join(', ');
      this.metadataPanel.appendChild(tags);
    } else {
      this.metadataPanel.hidden = true;
      this.metadataPanel.textContent = '';
    }

    const selected = view.selected ?? [];
    await this.ensureNames(selected);
    this.labelsList.textContent = '';
    for (const categoryId of selected) {
      const item = document.createElement('li');
      item.className = 'selected-label';
      item.dataset.id = categoryId;

      const name = document.createElement('span');
      name.textContent = this.names.get(categoryId) ?? categoryId;
      item.appendChild(name);

      const remove = document.createElement('button');
      remove.type = 'button';
      remove.className = 'label-remove';
      remove.textContent = 'remove';
      remove.disabled = submitted;
      remove.addEventListener('click', () => {
        void this.removeLabel(categoryId);
      });
      item.appendChild(remove);

      this.labelsList.appendChild(item);
    }

    this.submitButton.disabled = submitted;
    this.table.setSelected(selected);
  }

  private async ensureNames(ids: CategoryId[]): Promise<void> {
    for (const id of ids) {
      if (this.names.has(id)) continue;
      const detail = await this.api.category(id);
      this.names.set(id, detail.category.name);
    }
  }

  private showError(error: unknown): void {
    this.errorBox.hidden = false;
    this.errorBox.textContent =
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : String(error);
  }
}
