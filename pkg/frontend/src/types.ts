/**
 * Wire types for the scriptforge REST API.
 *
 * These mirror the JSON payloads the service serves and accepts; the UI
 * never invents fields the server does not know about.
 */

export interface CharacterProfile {
  name: string;
  background: string;
  personality: string;
  relationships: string;
}

/** The creative brief: outline, prior context, character roster, metadata. */
export interface StructuredInput {
  outline: string;
  previous_context: string;
  character_profiles: CharacterProfile[];
  metadata: string[];
}

export const DIRECTIVE_FIELDS = [
  'exposition_strategy',
  'narrative_pacing',
  'character_action',
  'character_emotion',
] as const;

export type DirectiveField = (typeof DIRECTIVE_FIELDS)[number];

export type NarrativeDirectives = Record<DirectiveField, string>;

export interface InteriorityFlag {
  paragraph_index: number;
  span: string;
  matched_marker: string;
}

export interface NovelPayload {
  paragraphs: string[];
  interiority_flags: InteriorityFlag[];
}

export interface ReviewTask {
  pair_id: string;
  input: StructuredInput;
  directives: NarrativeDirectives | null;
  novel: NovelPayload;
  /** Unix timestamp (seconds) after which the lease may be reassigned. */
  lease_expires_at: number;
}

export type VerdictAction = 'approve' | 'edit' | 'reject';

export interface EditPayload {
  input?: StructuredInput;
  directives?: NarrativeDirectives;
  novel?: NovelPayload;
}

export interface VerdictResult {
  pair_id: string;
  filter_state: string;
}

export interface AlignmentViolation {
  kind: string;
  evidence_span: string;
  severity: 'hard' | 'soft';
}

export interface AlignmentReport {
  violations: AlignmentViolation[];
}

/** 422 detail returned when an edit fails the automated checks. */
export interface EditRejectedDetail {
  error: string;
  report: AlignmentReport;
}

export interface BlindCandidate {
  label: string;
  text: string;
}

export interface EvalTask {
  scene_id: string;
  candidates: BlindCandidate[];
  session_id: string;
  progress: { completed: number; total: number };
  /** Optional creative brief shown above the screenplay when available. */
  input?: StructuredInput;
}

export type EvalTaskOrDone = EvalTask | { done: true };

export function isDone(task: EvalTaskOrDone): task is { done: true } {
  return 'done' in task && task.done === true;
}

export const ERROR_CATEGORIES = [
  'plot_coherence',
  'character_development',
  'narrative_pacing',
] as const;

export type ErrorCategory = (typeof ERROR_CATEGORIES)[number];

export interface ErrorNote {
  category: ErrorCategory;
  note: string;
}

export interface RatingSubmission {
  scene_id: string;
  label: string;
  score: number;
  rater_id: string;
  errors: ErrorNote[];
}

export interface ComparisonSubmission {
  scene_id: string;
  choice: string;
  rater_id: string;
}

export interface SessionSceneSpec {
  scene_id: string;
  outputs: Record<string, string>;
}

export interface JobRecord {
  job_id: string;
  kind: string;
  state: 'queued' | 'running' | 'done' | 'failed';
  progress: { completed: number; total: number };
  result: unknown;
  error: string | null;
}
