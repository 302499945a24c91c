/**
 * Entry point: mounts the review, rating, and comparison views behind a
 * minimal nav. The only configuration is the API base URL (``?api=`` query
 * parameter, falling back to the service default port).
 */

import { ApiClient } from './api.js';
import { clear, el } from './dom.js';
import { createComparisonView } from './views/comparison.js';
import { createRatingView } from './views/rating.js';
import { createReviewView } from './views/review.js';

export function mount(root: HTMLElement): void {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get('api') ?? 'http://localhost:8040';
  const reviewerId = params.get('reviewer') ?? 'reviewer-1';
  const sessionId = params.get('session') ?? '';

  const client = new ApiClient(baseUrl, { role: 'rater' });
  const nav = el('nav', 'sf-nav');
  const outlet = el('main', 'sf-outlet');
  root.append(nav, outlet);

  const screens: Record<string, () => Promise<HTMLElement>> = {
    Review: async () => {
      const view = createReviewView(client, { reviewerId });
      window.setInterval(() => view.checkLease(), 5000);
      await view.load();
      return view.element;
    },
    Rating: async () => {
      const view = createRatingView(client, sessionId, { raterId: reviewerId });
      await view.load();
      return view.element;
    },
    Comparison: async () => {
      const view = createComparisonView(client, sessionId, { raterId: reviewerId });
      await view.load();
      return view.element;
    },
  };

  for (const [name, build] of Object.entries(screens)) {
    const button = el('button', 'sf-nav__button', name);
    button.addEventListener('click', async () => {
      clear(outlet);
      outlet.append(await build());
    });
    nav.append(button);
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  mount(document.getElementById('app') as HTMLElement);
}
