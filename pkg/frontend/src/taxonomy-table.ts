import type { ApiClient } from './api.js';
import type { CategoryDetail, CategoryId, CategorySummary, SearchHit } from './types.js';

export interface TableCallbacks {
  onSelect(categoryId: CategoryId): void | Promise<void>;
}

const MIN_QUERY_LENGTH = 2;

/** Searchable, expandable taxonomy table.
 *
 * Rows start collapsed to the roots; expanding a row reveals its children
 * inline and collapsing hides the whole subtree. Any number of category
 * cards (description, hierarchy location, playable examples) can be open
 * side by side for comparison. */
export class TaxonomyTable {
  readonly element: HTMLElement;
  private readonly searchInput: HTMLInputElement;
  private readonly hitsList: HTMLElement;
  private readonly cardsStrip: HTMLElement;
  private readonly tree: HTMLElement;

  private roots: CategorySummary[] = [];
  private readonly childrenCache = new Map<CategoryId, CategorySummary[]>();
  private readonly detailCache = new Map<CategoryId, CategoryDetail>();
  private readonly expanded = new Set<CategoryId>();
  private openCards: CategoryId[] = [];
  private selected = new Set<CategoryId>();
  private hits: SearchHit[] = [];
  private highlighted: CategoryId | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly callbacks: TableCallbacks,
  ) {
    this.element = document.createElement('section');
    this.element.className = 'taxonomy-table';

    this.searchInput = document.createElement('input');
    this.searchInput.type = 'search';
    this.searchInput.className = 'category-search';
    this.searchInput.placeholder = 'search categories';
    this.searchInput.addEventListener('input', () => {
      void this.runSearch(this.searchInput.value);
    });
    this.element.appendChild(this.searchInput);

    this.hitsList = document.createElement('ul');
    this.hitsList.className = 'search-hits';
    this.element.appendChild(this.hitsList);

    this.cardsStrip = document.createElement('div');
    this.cardsStrip.className = 'category-cards';
    this.element.appendChild(this.cardsStrip);

    this.tree = document.createElement('div');
    this.tree.className = 'tree';
    this.element.appendChild(this.tree);
  }

  async load(): Promise<void> {
    this.roots = await this.api.roots();
    this.renderTree();
  }

  /** Marks which categories are already part of the task. */
  setSelected(ids: CategoryId[]): void {
    this.selected = new Set(ids);
    this.renderTree();
  }

  isExpanded(id: CategoryId): boolean {
    return this.expanded.has(id);
  }

  private async childrenOf(id: CategoryId): Promise<CategorySummary[]> {
    const cached = this.childrenCache.get(id);
    if (cached) return cached;
    const detail = await this.detailOf(id);
    return this.childrenCache.get(id) ?? detail.children;
  }

  private async detailOf(id: CategoryId): Promise<CategoryDetail> {
    const cached = this.detailCache.get(id);
    if (cached) return cached;
    const detail = await this.api.category(id);
    this.detailCache.set(id, detail);
    this.childrenCache.set(id, detail.children);
    return detail;
  }

  async toggle(id: CategoryId): Promise<void> {
    if (this.expanded.has(id)) {
      this.expanded.delete(id);
    } else {
      await this.childrenOf(id);
      this.expanded.add(id);
    }
    this.renderTree();
  }

  async openCard(id: CategoryId): Promise<void> {
    await this.detailOf(id);
    if (!this.openCards.includes(id)) this.openCards.push(id);
    this.renderCards();
  }

  closeCard(id: CategoryId): void {
    this.openCards = this.openCards.filter((open) => open !== id);
    this.renderCards();
  }

  openCardIds(): CategoryId[] {
    return [...this.openCards];
  }

  async runSearch(query: string): Promise<void> {
    if (query.trim().length < MIN_QUERY_LENGTH) {
      this.hits = [];
      this.renderHits();
      return;
    }
    const response = await this.api.search(query);
    this.hits = response.hits;
    this.renderHits();
  }

  /** Expands every ancestor along the hit's first path and highlights it. */
  async revealHit(hit: SearchHit): Promise<void> {
    const path = hit.ancestor_paths[0] ?? [];
    for (const node of path) {
      if (node.id === hit.category_id) continue;
      await this.childrenOf(node.id);
      this.expanded.add(node.id);
    }
    this.highlighted = hit.category_id;
    this.renderTree();
    const quoted = hit.category_id.replace(/(["\\])/g, '\\$1');
    const row = this.tree.querySelector<HTMLElement>(`[data-id="${quoted}"]`);
    row?.scrollIntoView?.({ block: 'center' });
  }

  private renderHits(): void {
    this.hitsList.textContent = '';
    for (const hit of this.hits) {
      const item = document.createElement('li');
      item.className = 'hit';
      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'hit-open';
      const breadcrumb = (hit.ancestor_paths[0] ?? [])
        .map((node) => node.name)
        .join(' › ');
      button.textContent = `${hit.name} (${hit.score.toFixed(2)}) — ${breadcrumb}`;
      button.addEventListener('click', () => {
        void this.revealHit(hit);
      });
      item.appendChild(button);
      this.hitsList.appendChild(item);
    }
  }

  private renderCards(): void {
    this.cardsStrip.textContent = '';
    for (const id of this.openCards) {
      const detail = this.detailCache.get(id);
      if (!detail) continue;
      const card = document.createElement('article');
      card.className = 'category-card';
      card.dataset.id = id;

      const heading = document.createElement('h3');
      heading.textContent = detail.category.name;
      card.appendChild(heading);

      const close = document.createElement('button');
      close.type = 'button';
      close.className = 'card-close';
      close.textContent = 'close';
      close.addEventListener('click', () => this.closeCard(id));
      card.appendChild(close);

      const location = document.createElement('p');
      location.className = 'card-location';
      location.textContent = detail.ancestor_paths
        .map((path) => path.map((node) => node.name).join(' › '))
        .join(' | ');
      card.appendChild(location);

      const description = document.createElement('p');
      description.className = 'card-description';
      description.textContent = detail.category.description;
      card.appendChild(description);

      for (const uri of detail.example_uris) {
        const example = document.createElement('audio');
        example.controls = true;
        example.preload = 'none';
        example.src = uri;
        example.className = 'card-example';
        card.appendChild(example);
      }

      this.cardsStrip.appendChild(card);
    }
  }

  private renderTree(): void {
    this.tree.textContent = '';
    this.tree.appendChild(this.renderLevel(this.roots));
  }

  private renderLevel(nodes: CategorySummary[]): HTMLElement {
    const list = document.createElement('ul');
    list.className = 'tree-level';
    for (const node of nodes) {
      const item = document.createElement('li');
      item.className = 'tree-node';

      const row = document.createElement('div');
      row.className = 'tree-row';
      row.dataset.id = node.id;
      if (node.id === this.highlighted) row.classList.add('highlighted');

      const toggle = document.createElement('button');
      toggle.type = 'button';
      toggle.className = 'row-toggle';
      toggle.disabled = node.child_count === 0;
      toggle.textContent = this.expanded.has(node.id) ? '▾' : '▸';
      toggle.addEventListener('click', () => {
        void this.toggle(node.id);
      });
      row.appendChild(toggle);

      const name = document.createElement('button');
      name.type = 'button';
      name.className = 'row-name';
      name.textContent = node.name;
      name.title = node.description;
      name.addEventListener('click', () => {
        void this.openCard(node.id);
      });
      row.appendChild(name);

      const add = document.createElement('button');
      add.type = 'button';
      add.className = 'row-add';
      if (this.selected.has(node.id)) {
        add.textContent = 'added';
        add.disabled = true;
      } else {
        add.textContent = 'add';
        // abstract categories organize the hierarchy; they cannot be labels
        add.disabled = node.abstract;
      }
      add.addEventListener('click', () => {
        void this.callbacks.onSelect(node.id);
      });
      row.appendChild(add);

      item.appendChild(row);

      if (this.expanded.has(node.id)) {
        const children = this.childrenCache.get(node.id) ?? [];
        if (children.length > 0) item.appendChild(this.renderLevel(children));
      }
      list.appendChild(item);
    }
    return list;
  }
}
