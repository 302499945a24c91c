/**
 * Review screen for pending training pairs.
 *
 * Three side-by-side panes show the creative brief, the narrative
 * directives, and the novel paragraphs; interiority flags overlay the
 * flagged paragraphs, and alignment violations returned by a failed edit
 * render inline. Verdicts (approve / edit / reject) go through the
 * service's verdict endpoint — the edit buffer itself never mutates server
 * state. When the lease expires a banner offers to reclaim the pair; the
 * local edit buffer survives the round trip.
 */

import { ApiClient, ApiError } from '../api.js';
import { clear, el } from '../dom.js';
import type {
  AlignmentReport,
  EditRejectedDetail,
  NovelPayload,
  ReviewTask,
} from '../types.js';
import { DIRECTIVE_FIELDS } from '../types.js';

export interface ReviewViewOptions {
  reviewerId: string;
  /** Clock in Unix seconds; injectable for tests. */
  now?: () => number;
}

export interface ReviewView {
  element: HTMLElement;
  /** Fetch (or re-fetch, reclaiming the lease) the next pending pair. */
  load(): Promise<void>;
  /** Show the reclaim banner if the current lease has expired. */
  checkLease(): void;
  readonly task: ReviewTask | null;
}

function splitParagraphs(text: string): string[] {
  return text
    .split(/\n{2,}/)
    .map((p) => p.trim())
    .filter((p) => p.length > 0);
}

export function createReviewView(client: ApiClient, options: ReviewViewOptions): ReviewView {
  const now = options.now ?? (() => Date.now() / 1000);
  const editBuffers = new Map<string, string>();

  const element = el('section', 'sf-review');
  const status = el('p', 'sf-review__status');
  const banner = el('div', 'sf-review__lease-banner');
  banner.hidden = true;
  const panes = el('div', 'sf-review__panes');
  const controls = el('div', 'sf-review__controls');
  const alignmentBox = el('div', 'sf-review__alignment');
  alignmentBox.hidden = true;
  element.append(status, banner, panes, alignmentBox, controls);

  let task: ReviewTask | null = null;
  let editBlocked = false;

  function renderBriefPane(t: ReviewTask): HTMLElement {
    const pane = el('div', 'sf-pane sf-pane--brief');
    pane.setAttribute('data-pane', 'brief');
    pane.append(el('h3', 'sf-pane__title', 'Creative brief'));
    pane.append(el('h4', undefined, 'Outline'));
    pane.append(el('p', 'sf-brief__outline', t.input.outline));
    pane.append(el('h4', undefined, 'Previous context'));
    pane.append(el('p', 'sf-brief__context', t.input.previous_context));
    pane.append(el('h4', undefined, 'Characters'));
    const roster = el('ul', 'sf-brief__roster');
    for (const profile of t.input.character_profiles) {
      const item = el('li');
      item.append(el('strong', undefined, profile.name));
      item.append(
        el('span', undefined, ` — ${profile.background}; ${profile.personality}; ${profile.relationships}`),
      );
      roster.append(item);
    }
    pane.append(roster);
    pane.append(el('h4', undefined, 'Metadata'));
    const meta = el('ul', 'sf-brief__metadata');
    for (const line of t.input.metadata) meta.append(el('li', undefined, line));
    pane.append(meta);
    return pane;
  }

  function renderDirectivesPane(t: ReviewTask): HTMLElement {
    const pane = el('div', 'sf-pane sf-pane--directives');
    pane.setAttribute('data-pane', 'directives');
    pane.append(el('h3', 'sf-pane__title', 'Narrative directives'));
    if (!t.directives) {
      pane.append(el('p', 'sf-directives__empty', 'No directives on this pair.'));
      return pane;
    }
    const list = el('dl', 'sf-directives');
    for (const field of DIRECTIVE_FIELDS) {
      list.append(el('dt', undefined, field.replace(/_/g, ' ')));
      list.append(el('dd', `sf-directive sf-directive--${field}`, t.directives[field]));
    }
    pane.append(list);
    return pane;
  }

  function renderNovelPane(t: ReviewTask): HTMLElement {
    const pane = el('div', 'sf-pane sf-pane--novel');
    pane.setAttribute('data-pane', 'novel');
    pane.append(el('h3', 'sf-pane__title', 'Novel'));
    const flagged = new Map<number, string[]>();
    for (const flag of t.novel.interiority_flags) {
      const markers = flagged.get(flag.paragraph_index) ?? [];
      markers.push(flag.matched_marker);
      flagged.set(flag.paragraph_index, markers);
    }
    t.novel.paragraphs.forEach((text, index) => {
      const p = el('p', 'sf-novel__paragraph', text);
      p.setAttribute('data-paragraph-index', String(index));
      const markers = flagged.get(index);
      if (markers) {
        p.classList.add('sf-novel__paragraph--interiority');
        const overlay = el('span', 'sf-flag-overlay', `interiority: ${markers.join(', ')}`);
        p.append(overlay);
      }
      pane.append(p);
    });
    return pane;
  }

  function renderAlignment(report: AlignmentReport): void {
    clear(alignmentBox);
    alignmentBox.hidden = false;
    alignmentBox.append(el('h4', undefined, 'Edit blocked: alignment violations'));
    const list = el('ul', 'sf-alignment__violations');
    for (const v of report.violations) {
      list.append(
        el('li', `sf-violation sf-violation--${v.severity}`, `${v.kind} (${v.severity}): ${v.evidence_span}`),
      );
    }
    alignmentBox.append(list);
  }

  function currentBuffer(t: ReviewTask): string {
    return editBuffers.get(t.pair_id) ?? t.novel.paragraphs.join('\n\n');
  }

  function renderControls(t: ReviewTask): void {
    clear(controls);

    const editArea = el('textarea', 'sf-edit-buffer');
    editArea.value = currentBuffer(t);
    editArea.addEventListener('input', () => {
      editBuffers.set(t.pair_id, editArea.value);
      editBlocked = false;
      alignmentBox.hidden = true;
    });

    const reasonInput = el('input', 'sf-reject-reason');
    reasonInput.placeholder = 'rejection reason';

    const approveBtn = el('button', 'sf-verdict sf-verdict--approve', 'Approve');
    const editBtn = el('button', 'sf-verdict sf-verdict--edit', 'Submit edit');
    const rejectBtn = el('button', 'sf-verdict sf-verdict--reject', 'Reject');

    async function finish(result: { filter_state: string }): Promise<void> {
      editBuffers.delete(t.pair_id);
      status.textContent = `${t.pair_id}: ${result.filter_state}`;
      await view.load();
    }

    approveBtn.addEventListener('click', async () => {
      const result = await client.submitVerdict(t.pair_id, 'approve', options.reviewerId);
      await finish(result);
    });

    rejectBtn.addEventListener('click', async () => {
      const result = await client.submitVerdict(t.pair_id, 'reject', options.reviewerId, {
        reason: reasonInput.value || undefined,
      });
      await finish(result);
    });

    editBtn.addEventListener('click', async () => {
      if (editBlocked) {
        status.textContent = 'edit blocked until the buffer changes';
        return;
      }
      const novel: NovelPayload = {
        paragraphs: splitParagraphs(editArea.value),
        interiority_flags: [],
      };
      try {
        const result = await client.submitVerdict(t.pair_id, 'edit', options.reviewerId, {
          edit: { novel },
        });
        await finish(result);
      } catch (err) {
        if (err instanceof ApiError && err.status === 422 && isEditRejected(err.detail)) {
          editBlocked = true;
          renderAlignment(err.detail.report);
          return;
        }
        throw err;
      }
    });

    controls.append(editArea, approveBtn, editBtn, reasonInput, rejectBtn);
  }

  function render(t: ReviewTask): void {
    clear(panes);
    alignmentBox.hidden = true;
    banner.hidden = true;
    editBlocked = false;
    status.textContent = `Reviewing ${t.pair_id}`;
    panes.append(renderBriefPane(t), renderDirectivesPane(t), renderNovelPane(t));
    renderControls(t);
  }

  const view: ReviewView = {
    element,
    get task() {
      return task;
    },
    async load() {
      try {
        task = await client.nextReviewTask(options.reviewerId);
      } catch (err) {
        if (err instanceof ApiError && err.status === 404) {
          task = null;
          clear(panes);
          clear(controls);
          banner.hidden = true;
          status.textContent = 'Review queue is empty.';
          return;
        }
        throw err;
      }
      render(task);
    },
    checkLease() {
      if (!task || now() < task.lease_expires_at) return;
      clear(banner);
      banner.hidden = false;
      banner.append(el('span', 'sf-lease-banner__text', 'Lease expired — reclaim to continue.'));
      const reclaim = el('button', 'sf-lease-banner__reclaim', 'Reclaim');
      reclaim.addEventListener('click', () => void view.load());
      banner.append(reclaim);
    },
  };
  return view;
}

function isEditRejected(detail: unknown): detail is EditRejectedDetail {
  return (
    typeof detail === 'object' &&
    detail !== null &&
    'report' in detail &&
    typeof (detail as { report: unknown }).report === 'object'
  );
}
