import type {
  CategoryDetail,
  CategoryId,
  CategorySummary,
  MetadataResponse,
  PlaylistResponse,
  SearchResponse,
  SoundView,
  StatsRow,
  SubmitResponse,
  TaskView,
  Verdict,
} from './types.js';

/** Error body every endpoint uses: {"code": "...", "message": "..."}. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export class ApiClient {
  constructor(
    private readonly base: string = '',
    readonly annotatorId: string = 'anonymous',
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method,
      headers: {
        'Content-Type': 'application/json',
        annotator_id: this.annotatorId,
      },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = 'HttpError';
      let message = `${response.status}`;
      try {
        const doc = (await response.json()) as { code?: string; message?: string };
        code = doc.code ?? code;
        message = doc.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  roots(): Promise<CategorySummary[]> {
    return this.request('GET', '/taxonomy/roots');
  }

  // category ids contain slashes (/m/...); the server route accepts them raw
  category(id: CategoryId): Promise<CategoryDetail> {
    return this.request('GET', `/taxonomy/categories/${id}`);
  }

  search(q: string, limit?: number, threshold?: number): Promise<SearchResponse> {
    const params = new URLSearchParams({ q });
    if (limit !== undefined) params.set('limit', String(limit));
    if (threshold !== undefined) params.set('threshold', String(threshold));
    return this.request('GET', `/search?${params}`);
  }

  sounds(): Promise<SoundView[]> {
    return this.request('GET', '/sounds');
  }

  sound(id: string): Promise<SoundView> {
    return this.request('GET', `/sounds/${encodeURIComponent(id)}`);
  }

  playlist(annotatorId: string): Promise<PlaylistResponse> {
    return this.request('GET', `/playlists/${encodeURIComponent(annotatorId)}`);
  }

  createGenerationTask(soundId: string): Promise<TaskView> {
    return this.request('POST', '/tasks/generation', { sound_id: soundId });
  }

  createRefinementTask(soundId: string, proposals?: CategoryId[]): Promise<TaskView> {
    const body: Record<string, unknown> = { sound_id: soundId };
    if (proposals !== undefined) body.proposals = proposals;
    return this.request('POST', '/tasks/refinement', body);
  }

  task(taskId: string): Promise<TaskView> {
    return this.request('GET', `/tasks/${encodeURIComponent(taskId)}`);
  }

  addLabel(taskId: string, categoryId: CategoryId): Promise<TaskView> {
    return this.request('POST', `/tasks/${encodeURIComponent(taskId)}/labels`, {
      category_id: categoryId,
    });
  }

  removeLabel(taskId: string, categoryId: CategoryId): Promise<TaskView> {
    return this.request('DELETE', `/tasks/${encodeURIComponent(taskId)}/labels/${categoryId}`);
  }

  refineToChild(taskId: string, rowId: string, child: CategoryId): Promise<TaskView> {
    return this.request('POST', this.rowPath(taskId, rowId, 'refine'), { child });
  }

  moveToSibling(taskId: string, rowId: string, sibling: CategoryId): Promise<TaskView> {
    return this.request('POST', this.rowPath(taskId, rowId, 'sibling'), { sibling });
  }

  undoMove(taskId: string, rowId: string): Promise<TaskView> {
    return this.request('POST', this.rowPath(taskId, rowId, 'undo'));
  }

  duplicateRow(taskId: string, rowId: string): Promise<TaskView> {
    return this.request('POST', this.rowPath(taskId, rowId, 'duplicate'));
  }

  setVerdict(taskId: string, rowId: string, verdict: Verdict): Promise<TaskView> {
    return this.request('POST', this.rowPath(taskId, rowId, 'verdict'), { verdict });
  }

  private rowPath(taskId: string, rowId: string, op: string): string {
    return `/tasks/${encodeURIComponent(taskId)}/rows/${encodeURIComponent(rowId)}/${op}`;
  }

  recordPlayback(taskId: string, kind: 'started' | 'completed', positionS: number): Promise<TaskView> {
    return this.request('POST', `/tasks/${encodeURIComponent(taskId)}/playback`, {
      kind,
      position_s: positionS,
    });
  }

  requestMetadata(taskId: string): Promise<MetadataResponse> {
    return this.request('POST', `/tasks/${encodeURIComponent(taskId)}/metadata-request`);
  }

  submit(taskId: string): Promise<SubmitResponse> {
    return this.request('POST', `/tasks/${encodeURIComponent(taskId)}/submit`);
  }

  async exportDataset(provenance?: string): Promise<string> {
    const suffix = provenance ? `?provenance=${encodeURIComponent(provenance)}` : '';
    const response = await fetch(`${this.base}/export${suffix}`);
    if (!response.ok) {
      throw new ApiError(response.status, 'HttpError', `${response.status}`);
    }
    return response.text();
  }

  stats(taskIds?: string[]): Promise<StatsRow[]> {
    const params = new URLSearchParams();
    for (const id of taskIds ?? []) params.append('task_id', id);
    const query = params.toString();
    return this.request('GET', `/stats${query ? `?${query}` : ''}`);
  }
}
