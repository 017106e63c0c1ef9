import { ApiError, type ApiClient } from './api.js';
import { Player } from './player.js';
import type { CategoryDetail, CategoryId, RowView, TaskView, Verdict } from './types.js';

const VERDICTS: Verdict[] = ['present', 'not_present', 'unsure'];

/** Label-refinement task screen.
 *
 * Each proposed label renders as a row: breadcrumb of its current location,
 * a dropdown of the current category's children, sibling shortcuts, undo,
 * duplicate, an info popup and a presence verdict. All row state comes from
 * the server's task view, so reloading mid-task rebuilds the same screen. */
export class RefinementView {
  readonly element: HTMLElement;

  private view: TaskView | null = null;
  private player: Player | null = null;
  private readonly details = new Map<CategoryId, CategoryDetail>();
  private siblingMovesDisabled = false;

  private readonly statusLine: HTMLElement;
  private readonly errorBox: HTMLElement;
  private readonly playerMount: HTMLElement;
  private readonly metadataButton: HTMLButtonElement;
  private readonly metadataPanel: HTMLElement;
  private readonly rowsMount: HTMLElement;
  private readonly submitButton: HTMLButtonElement;

  constructor(
    private readonly api: ApiClient,
    private readonly taskId: string,
  ) {
    this.element = document.createElement('section');
    this.element.className = 'refinement-view';

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

    this.rowsMount = document.createElement('div');
    this.rowsMount.className = 'refinement-rows';
    this.element.appendChild(this.rowsMount);

    this.submitButton = document.createElement('button');
    this.submitButton.type = 'button';
    this.submitButton.className = 'submit-task';
    this.submitButton.textContent = 'submit verdicts';
    this.submitButton.addEventListener('click', () => {
      void this.submit();
    });
    this.element.appendChild(this.submitButton);
  }

  currentView(): TaskView | null {
    return this.view;
  }

  async load(): Promise<void> {
    const view = await this.api.task(this.taskId);
    await this.applyView(view);
  }

  async refineToChild(rowId: string, childId: CategoryId): Promise<void> {
    await this.mutate(() => this.api.refineToChild(this.taskId, rowId, childId));
  }

  async moveToSibling(rowId: string, siblingId: CategoryId): Promise<void> {
    try {
      const view = await this.api.moveToSibling(this.taskId, rowId, siblingId);
      await this.applyView(view);
    } catch (error) {
      if (error instanceof ApiError && error.code === 'SiblingExplorationDisabled') {
        this.siblingMovesDisabled = true;
        this.render();
      }
      this.showError(error);
    }
  }

  async undoMove(rowId: string): Promise<void> {
    await this.mutate(() => this.api.undoMove(this.taskId, rowId));
  }

  async duplicateRow(rowId: string): Promise<void> {
    await this.mutate(() => this.api.duplicateRow(this.taskId, rowId));
  }

  async setVerdict(rowId: string, verdict: Verdict): Promise<void> {
    await this.mutate(() => this.api.setVerdict(this.taskId, rowId, verdict));
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
      this.statusLine.textContent = `submitted ${response.annotations.length} annotation(s)`;
    } catch (error) {
      this.showError(error);
    }
  }

  private async mutate(call: () => Promise<TaskView>): Promise<void> {
    try {
      const view = await call();
      await this.applyView(view);
    } catch (error) {
      this.showError(error);
    }
  }

  private async recordPlayback(kind: 'started' | 'completed', positionS: number): Promise<void> {
    await this.mutate(() => this.api.recordPlayback(this.taskId, kind, positionS));
  }

  private async applyView(view: TaskView): Promise<void> {
    this.view = view;
    this.errorBox.hidden = true;
    this.errorBox.textContent = '';
    for (const row of view.rows ?? []) {
      if (!this.details.has(row.current_category)) {
        this.details.set(row.current_category, await this.api.category(row.current_category));
      }
    }
    this.render();
  }

  private render(): void {
    const view = this.view;
    if (!view) return;

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
      : `refining labels for ${view.sound.title}`;

    this.metadataButton.disabled =
      submitted || view.metadata_revealed || !view.gate_satisfied;
    this.metadataButton.title = view.gate_satisfied
      ? ''
      : 'listen to the clip first';

    const metadata = view.sound.metadata;
    this.metadataPanel.textContent = '';
    if (view.metadata_revealed && metadata) {
      this.metadataPanel.hidden = false;
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
    }

    this.rowsMount.textContent = '';
    for (const row of view.rows ?? []) {
      this.rowsMount.appendChild(this.renderRow(row, submitted));
    }

    this.submitButton.disabled = submitted;
  }

  private renderRow(row: RowView, submitted: boolean): HTMLElement {
    const detail = this.details.get(row.current_category);
    const container = document.createElement('article');
    container.className = 'refinement-row';
    container.dataset.rowId = row.row_id;

    const breadcrumb = document.createElement('p');
    breadcrumb.className = 'row-breadcrumb';
    const path = detail?.ancestor_paths[0] ?? [];
    breadcrumb.textContent = path.length > 0
      ? path.map((node) => node.name).join(' › ')
      : row.current_name;
    container.appendChild(breadcrumb);

    const origin = document.createElement('p');
    origin.className = 'row-origin';
    origin.textContent = `proposed: ${row.original_name}`;
    container.appendChild(origin);

    const controls = document.createElement('div');
    controls.className = 'row-controls';

    const childSelect = document.createElement('select');
    childSelect.className = 'child-select';
    const placeholder = document.createElement('option');
    placeholder.value = '';
    placeholder.textContent = 'refine to child…';
    childSelect.appendChild(placeholder);
    for (const child of detail?.children ?? []) {
      const option = document.createElement('option');
      option.value = child.id;
      option.textContent = child.name;
      childSelect.appendChild(option);
    }
    childSelect.disabled = submitted || (detail?.children.length ?? 0) === 0;
    childSelect.addEventListener('change', () => {
      if (childSelect.value) void this.refineToChild(row.row_id, childSelect.value);
    });
    controls.appendChild(childSelect);

    if (!this.siblingMovesDisabled) {
      const siblings = document.createElement('span');
      siblings.className = 'sibling-list';
      for (const sibling of detail?.siblings ?? []) {
        const button = document.createElement('button');
        button.type = 'button';
        button.className = 'sibling-move';
        button.textContent = `→ ${sibling.name}`;
        button.disabled = submitted;
        button.addEventListener('click', () => {
          void this.moveToSibling(row.row_id, sibling.id);
        });
        siblings.appendChild(button);
      }
      controls.appendChild(siblings);
    }

    const undo = document.createElement('button');
    undo.type = 'button';
    undo.className = 'row-undo';
    undo.textContent = 'undo';
    const history = row.move_history;
    const lastMove = history[history.length - 1];
    undo.disabled = submitted || !lastMove || lastMove.kind === 'duplicate_origin';
    undo.addEventListener('click', () => {
      void this.undoMove(row.row_id);
    });
    controls.appendChild(undo);

    const duplicate = document.createElement('button');
    duplicate.type = 'button';
    duplicate.className = 'row-duplicate';
    duplicate.textContent = 'duplicate';
    duplicate.disabled = submitted;
    duplicate.addEventListener('click', () => {
      void this.duplicateRow(row.row_id);
    });
    controls.appendChild(duplicate);

    const info = document.createElement('button');
    info.type = 'button';
    info.className = 'row-info';
    info.textContent = 'info';
    controls.appendChild(info);

    container.appendChild(controls);

    const popup = document.createElement('div');
    popup.className = 'row-popup';
    popup.hidden = true;
    const popupText = document.createElement('p');
    popupText.textContent = detail?.category.description ?? '';
    popup.appendChild(popupText);
    for (const uri of detail?.example_uris ?? []) {
      const example = document.createElement('audio');
      example.controls = true;
      example.preload = 'none';
      example.src = uri;
      popup.appendChild(example);
    }
    info.addEventListener('click', () => {
      popup.hidden = !popup.hidden;
    });
    container.appendChild(popup);

    const verdicts = document.createElement('div');
    verdicts.className = 'row-verdicts';
    for (const verdict of VERDICTS) {
      const label = document.createElement('label');
      label.className = 'verdict-option';
      const radio = document.createElement('input');
      radio.type = 'radio';
      radio.name = `verdict-${row.row_id}`;
      radio.value = verdict;
      // defaultChecked reflects as an attribute, so serialized markup
      // carries the verdict and a reloaded view compares equal
      radio.defaultChecked = row.verdict === verdict;
      radio.checked = row.verdict === verdict;
      radio.disabled = submitted;
      radio.addEventListener('change', () => {
        void this.setVerdict(row.row_id, verdict);
      });
      label.appendChild(radio);
      label.appendChild(document.createTextNode(verdict.replace('_', ' ')));
      verdicts.appendChild(label);
    }
    container.appendChild(verdicts);

    return container;
  }

  private showError(error: unknown): void {
    this.errorBox.hidden = false;
    this.errorBox.textContent =
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : String(error);
  }
}
