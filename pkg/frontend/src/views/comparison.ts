/**
 * Pairwise/groupwise comparison screen.
 *
 * Shows the blinded candidates of the current scene in a randomized
 * order, a single-choice selector, and a progress indicator. The payload
 * it renders is already blinded by the server, and the view adds no
 * identifying text of its own, so no system identity ever reaches the DOM.
 */

import type { ApiClient } from '../api.js';
import { clear, el } from '../dom.js';
import type { EvalTask } from '../types.js';
import { isDone } from '../types.js';

export interface ComparisonViewOptions {
  raterId: string;
  /** Random source for display-order shuffling; injectable for tests. */
  random?: () => number;
}

export interface ComparisonView {
  element: HTMLElement;
  load(): Promise<void>;
  readonly task: EvalTask | null;
}

function shuffled<T>(items: readonly T[], random: () => number): T[] {
  const copy = [...items];
  for (let i = copy.length - 1; i > 0; i -= 1) {
    const j = Math.floor(random() * (i + 1));
    [copy[i], copy[j]] = [copy[j]!, copy[i]!];
  }
  return copy;
}

export function createComparisonView(
  client: ApiClient,
  sessionId: string,
  options: ComparisonViewOptions,
): ComparisonView {
  const random = options.random ?? Math.random;
  const element = el('section', 'sf-comparison');
  const progress = el('p', 'sf-comparison__progress');
  const status = el('p', 'sf-comparison__status');
  const board = el('div', 'sf-comparison__board');
  const controls = el('div', 'sf-comparison__controls');
  element.append(progress, status, board, controls);

  let task: EvalTask | null = null;

  function render(t: EvalTask): void {
    status.textContent = `Scene ${t.scene_id}: pick the strongest candidate.`;
    progress.textContent = `${t.progress.completed} of ${t.progress.total} scenes compared`;

    let choice: string | null = null;
    for (const candidate of shuffled(t.candidates, random)) {
      const card = el('article', 'sf-comparison__candidate');
      card.setAttribute('data-label', candidate.label);
      const pick = el('label', 'sf-comparison__pick');
      const radio = el('input');
      radio.type = 'radio';
      radio.name = 'choice';
      radio.value = candidate.label;
      radio.addEventListener('change', () => {
        choice = candidate.label;
      });
      pick.append(radio, el('span', undefined, ` Candidate ${candidate.label}`));
      card.append(pick, el('pre', 'sf-comparison__screenplay', candidate.text));
      board.append(card);
    }

    const problem = el('p', 'sf-comparison__problem');
    problem.hidden = true;
    const submit = el('button', 'sf-comparison__submit', 'Submit choice');
    submit.addEventListener('click', async () => {
      if (choice === null) {
        problem.hidden = false;
        problem.textContent = 'Pick a candidate first.';
        return;
      }
      await client.submitComparison(t.session_id, {
        scene_id: t.scene_id,
        choice,
        rater_id: options.raterId,
      });
      await view.load();
    });
    controls.append(problem, submit);
  }

  const view: ComparisonView = {
    element,
    get task() {
      return task;
    },
    async load() {
      const next = await client.nextEvalTask(sessionId, options.raterId);
      clear(board);
      clear(controls);
      if (isDone(next)) {
        task = null;
        status.textContent = 'All scenes compared.';
        progress.textContent = 'complete';
        return;
      }
      task = next;
      render(next);
    },
  };
  return view;
}
