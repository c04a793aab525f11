import { describe, expect, it } from 'vitest';

import type { RankingEntry } from '../src/api';
import { renderRanking, todayUtc } from '../src/gallery';

const entry = (rank: number, id: string, score: number): RankingEntry => ({
  rank,
  photo_id: id,
  display_score: score,
  owner_name: 'ana',
});

describe('renderRanking', () => {
  it('preserves the API order exactly, even when it looks unsorted', () => {
    // the server owns tie-breaking; the page must not re-sort
    const entries = [entry(1, 'b', 70), entry(2, 'a', 70), entry(3, 'c', 70)];
    const host = document.createElement('div');
    renderRanking(host, entries);
    const ids = [...host.querySelectorAll<HTMLElement>('li')].map((li) => li.dataset.photoId);
    expect(ids).toEqual(['b', 'a', 'c']);
  });

  it('shows an empty message when the day has no photos', () => {
    const host = document.createElement('div');
    renderRanking(host, []);
    expect(host.querySelector('ol')).toBeNull();
    expect(host.textContent).toContain('No photos yet');
  });

  it('re-render replaces the previous list', () => {
    const host = document.createElement('div');
    renderRanking(host, [entry(1, 'x', 80)]);
    renderRanking(host, [entry(1, 'y', 90), entry(2, 'x', 80)]);
    expect(host.querySelectorAll('li')).toHaveLength(2);
  });
});

describe('todayUtc', () => {
  it('formats as YYYY-MM-DD in UTC', () => {
    expect(todayUtc(new Date('2024-05-10T23:59:00Z'))).toBe('2024-05-10');
    expect(todayUtc(new Date('2024-05-10T00:00:00Z'))).toBe('2024-05-10');
  });
});
