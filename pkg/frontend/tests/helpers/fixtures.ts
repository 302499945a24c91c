import type { EvalTask, ReviewTask } from '../../src/types.js';

export function sampleReviewTask(overrides: Partial<ReviewTask> = {}): ReviewTask {
  return {
    pair_id: 'pair-0123abcd4567',
    input: {
      outline: 'Maya confronts Jonas about the altered ledger entry in the study.',
      previous_context: 'series opening',
      character_profiles: [
        {
          name: 'Maya',
          background: 'an archivist',
          personality: 'sharp and persistent',
          relationships: 'sister of Jonas',
        },
        {
          name: 'Jonas',
          background: 'a clerk',
          personality: 'anxious',
          relationships: 'brother of Maya',
        },
      ],
      metadata: ['Focus on what Maya wants in this scene.'],
    },
    directives: {
      exposition_strategy: 'Reveal the altered entry through physical evidence.',
      narrative_pacing: 'Slow burn, then a sharp confrontation.',
      character_action: 'Maya corners Jonas at the desk.',
      character_emotion: 'Suspicion hardening into certainty.',
    },
    novel: {
      paragraphs: [
        'Maya spread the ledger across the desk and waited.',
        'Jonas lingered at the doorway, his hands working at his cuffs.',
      ],
      interiority_flags: [
        { paragraph_index: 1, span: 'his hands working at his cuffs', matched_marker: 'felt' },
      ],
    },
    lease_expires_at: Date.now() / 1000 + 1800,
    ...overrides,
  };
}

/** A blinded eval task, the way the server hands it to a rater. */
export function sampleEvalTask(overrides: Partial<EvalTask> = {}): EvalTask {
  return {
    scene_id: 'scene-0',
    session_id: 'session-feedcafe0001',
    candidates: [
      { label: 'A', text: 'INT. ROOM - DAY\n\nFirst take of the scene.' },
      { label: 'B', text: 'INT. ROOM - DAY\n\nSecond take of the scene.' },
      { label: 'C', text: 'INT. ROOM - DAY\n\nReference take of the scene.' },
    ],
    progress: { completed: 0, total: 2 },
    ...overrides,
  };
}
