import type { RankingEntry } from './api.js';

/**
 * Render the daily ranking exactly in the order the API returned it.
 * The server owns the tie rules; reordering client-side would lie.
 */
export function renderRanking(container: HTMLElement, entries: RankingEntry[]): void {
  container.replaceChildren();
  container.classList.add('ranking');

  if (!entries.length) {
    const empty = document.createElement('p');
    empty.className = 'ranking-empty';
    empty.textContent = 'No photos yet for this day.';
    container.appendChild(empty);
    return;
  }

  const list = document.createElement('ol');
  for (const entry of entries) {
    const item = document.createElement('li');
    item.dataset.photoId = entry.photo_id;
    item.dataset.rank = String(entry.rank);
    item.textContent = `#${entry.rank} ${entry.owner_name} — ${entry.display_score}`;
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function todayUtc(now = new Date()): string {
  return now.toISOString().slice(0, 10);
}
