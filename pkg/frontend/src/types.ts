// Wire types for the taxotag HTTP API. Field names mirror the JSON exactly.

export type CategoryId = string;

export interface CategorySummary {
  id: CategoryId;
  name: string;
  description: string;
  abstract: boolean;
  child_count: number;
}

export interface PathNode {
  id: CategoryId;
  name: string;
}

export interface CategoryDetail {
  category: {
    id: CategoryId;
    name: string;
    description: string;
    citation_uri: string;
    abstract: boolean;
    blacklisted: boolean;
  };
  parents: CategorySummary[];
  children: CategorySummary[];
  siblings: CategorySummary[];
  ancestor_paths: PathNode[][];
  example_uris: string[];
}

export interface SearchHit {
  category_id: CategoryId;
  name: string;
  score: number;
  matched_field: 'name' | 'description';
  ancestor_paths: PathNode[][];
}

export interface SearchResponse {
  query: string;
  hits: SearchHit[];
}

export interface SoundMetadata {
  description: string;
  tags: string[];
}

export interface SoundView {
  sound_id: string;
  title: string;
  audio_uri: string;
  duration_s: number;
  spectrogram_uri?: string;
  metadata?: SoundMetadata; // present only once the effort gate released it
}

export type Verdict = 'present' | 'not_present' | 'unsure';

export interface MoveView {
  kind: 'to_child' | 'to_sibling' | 'duplicate_origin';
  from: CategoryId;
  to: CategoryId;
  at: string;
}

export interface RowView {
  row_id: string;
  original_category: CategoryId;
  current_category: CategoryId;
  original_name: string;
  current_name: string;
  move_history: MoveView[];
  verdict: Verdict | null;
}

export interface EventView {
  kind: string;
  at: string;
  detail: Record<string, unknown>;
}

export interface TaskView {
  task_id: string;
  kind: 'generation' | 'refinement';
  state: 'open' | 'submitted';
  annotator_id: string;
  created_at: string;
  submitted_at: string | null;
  metadata_revealed: boolean;
  gate_satisfied: boolean;
  sound: SoundView;
  events: EventView[];
  selected?: CategoryId[]; // generation only
  rows?: RowView[]; // refinement only
}

export interface AnnotationView {
  sound_id: string;
  category_id: CategoryId;
  provenance: 'candidate_automatic' | 'manual_generated' | 'manual_refined';
  original_category?: CategoryId;
  verdict?: Verdict;
  annotator_id?: string;
  task_id?: string;
  created_at: string;
}

export interface SubmitResponse {
  task: TaskView;
  annotations: AnnotationView[];
}

export interface MetadataResponse {
  task_id: string;
  metadata: SoundMetadata;
}

export interface StatsRow {
  task_id: string;
  annotator_id: string;
  kind: 'generation' | 'refinement';
  duration_s: number;
  label_count: number;
  verdict_counts: Record<string, number>;
}

export interface PlaylistResponse {
  annotator_id: string;
  sound_ids: string[];
}
