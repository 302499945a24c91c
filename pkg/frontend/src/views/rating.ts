/**
 * Rating screen for blinded evaluation candidates.
 *
 * Each candidate shows only its opaque label and screenplay text. The
 * score control offers the twelve integer scores grouped under the six
 * named tiers; the tier caption next to the selected score is always
 * computed from the score, never stored separately. Error-category
 * toggles with free-form notes accompany each rating. Scores outside
 * 1..12 can never be submitted. The creative brief, when available, is
 * shown above the screenplay and can be hidden with a toggle.
 */

import type { ApiClient } from '../api.js';
import { clear, el } from '../dom.js';
import { TIER_BANDS, isValidScore, tierOf } from '../rubric.js';
import type { ErrorNote, EvalTask, StructuredInput } from '../types.js';
import { ERROR_CATEGORIES, isDone } from '../types.js';

export interface RatingViewOptions {
  raterId: string;
  /** Show the creative brief above the screenplay (default true). */
  showBrief?: boolean;
  /** Brief to display when the task payload does not carry one. */
  brief?: StructuredInput;
}

export interface RatingView {
  element: HTMLElement;
  load(): Promise<void>;
  readonly task: EvalTask | null;
}

function renderBrief(input: StructuredInput): HTMLElement {
  const box = el('div', 'sf-rating__brief');
  box.append(el('h4', undefined, 'Creative brief'));
  box.append(el('p', 'sf-brief__outline', input.outline));
  box.append(el('p', 'sf-brief__context', input.previous_context));
  const meta = el('ul', 'sf-brief__metadata');
  for (const line of input.metadata) meta.append(el('li', undefined, line));
  box.append(meta);
  return box;
}

export function createRatingView(
  client: ApiClient,
  sessionId: string,
  options: RatingViewOptions,
): RatingView {
  const element = el('section', 'sf-rating');
  const status = el('p', 'sf-rating__status');
  const briefBox = el('div', 'sf-rating__brief-slot');
  const toggleLabel = el('label', 'sf-rating__brief-toggle');
  const toggle = el('input');
  toggle.type = 'checkbox';
  toggle.checked = options.showBrief ?? true;
  toggleLabel.append(toggle, el('span', undefined, ' show brief'));
  const candidates = el('div', 'sf-rating__candidates');
  element.append(status, toggleLabel, briefBox, candidates);

  let task: EvalTask | null = null;

  toggle.addEventListener('change', () => {
    briefBox.hidden = !toggle.checked;
  });

  function renderScoreControl(
    label: string,
    tierCaption: HTMLElement,
    getScore: { value: number | null },
  ): HTMLElement {
    const control = el('div', 'sf-score-control');
    for (const band of TIER_BANDS) {
      const group = el('fieldset', 'sf-score-control__tier');
      group.setAttribute('data-tier', band.name);
      const legend = el('legend', 'sf-score-control__tier-name', `${band.name} (${band.min}–${band.max})`);
      group.append(legend);
      group.append(el('p', 'sf-score-control__tier-description', band.description));
      for (let score = band.min; score <= band.max; score += 1) {
        const radioLabel = el('label', 'sf-score-control__score');
        const radio = el('input');
        radio.type = 'radio';
        radio.name = `score-${label}`;
        radio.value = String(score);
        radio.addEventListener('change', () => {
          getScore.value = score;
          tierCaption.textContent = tierOf(score).name;
        });
        radioLabel.append(radio, el('span', undefined, String(score)));
        group.append(radioLabel);
      }
      control.append(group);
    }
    return control;
  }

  function renderCandidate(t: EvalTask, label: string, text: string): HTMLElement {
    const card = el('article', 'sf-rating__candidate');
    card.setAttribute('data-label', label);
    card.append(el('h3', 'sf-rating__candidate-title', `Candidate ${label}`));
    card.append(el('pre', 'sf-rating__screenplay', text));

    const tierCaption = el('p', 'sf-rating__tier-caption', 'select a score');
    const selected: { value: number | null } = { value: null };
    card.append(renderScoreControl(label, tierCaption, selected));
    card.append(tierCaption);

    const noteInputs = new Map<string, { checkbox: HTMLInputElement; note: HTMLInputElement }>();
    const errorBox = el('div', 'sf-rating__errors');
    for (const category of ERROR_CATEGORIES) {
      const row = el('label', 'sf-rating__error-toggle');
      const checkbox = el('input');
      checkbox.type = 'checkbox';
      checkbox.value = category;
      const note = el('input', 'sf-rating__error-note');
      note.placeholder = 'note';
      row.append(checkbox, el('span', undefined, ` ${category.replace(/_/g, ' ')} `), note);
      errorBox.append(row);
      noteInputs.set(category, { checkbox, note });
    }
    card.append(errorBox);

    const problem = el('p', 'sf-rating__problem');
    problem.hidden = true;
    const submit = el('button', 'sf-rating__submit', 'Submit rating');
    submit.addEventListener('click', async () => {
      if (!isValidScore(selected.value)) {
        problem.hidden = false;
        problem.textContent = 'Pick a score between 1 and 12 before submitting.';
        return;
      }
      const errors: ErrorNote[] = [];
      for (const category of ERROR_CATEGORIES) {
        const inputs = noteInputs.get(category);
        if (inputs && inputs.checkbox.checked) {
          errors.push({ category, note: inputs.note.value });
        }
      }
      await client.submitRating(t.session_id, {
        scene_id: t.scene_id,
        label,
        score: selected.value,
        rater_id: options.raterId,
        errors,
      });
      submit.disabled = true;
      problem.hidden = true;
      card.setAttribute('data-submitted', 'true');
    });
    card.append(problem, submit);
    return card;
  }

  return {
    element,
    get task() {
      return task;
    },
    async load() {
      const next = await client.nextEvalTask(sessionId, options.raterId);
      clear(candidates);
      clear(briefBox);
      if (isDone(next)) {
        task = null;
        status.textContent = 'All scenes rated.';
        return;
      }
      task = next;
      status.textContent = `Scene ${next.scene_id} — ${next.progress.completed} of ${next.progress.total} done`;
      const brief = next.input ?? options.brief;
      if (brief) briefBox.append(renderBrief(brief));
      briefBox.hidden = !toggle.checked;
      for (const candidate of next.candidates) {
        candidates.append(renderCandidate(next, candidate.label, candidate.text));
      }
    },
  };
}
