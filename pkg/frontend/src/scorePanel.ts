import { ATTRIBUTES, type Attribute, type Scores } from './api.js';

export interface AttributeRow {
  attribute: Attribute;
  display: number;
}

/** Attributes sorted strongest first; equal scores keep canonical order. */
export function rankAttributes(scores: Scores): AttributeRow[] {
  return ATTRIBUTES.map((attribute) => ({
    attribute,
    display: scores.display.attributes[attribute],
  })).sort((a, b) => b.display - a.display);
}

/**
 * Fill `container` with the 7 scores of one photo: the overall score as a
 * headline, then every attribute, best first.
 */
export function renderScorePanel(container: HTMLElement, scores: Scores): void {
  container.replaceChildren();
  container.classList.add('score-panel');

  const headline = document.createElement('div');
  headline.className = 'score-overall';
  headline.dataset.score = String(scores.display.overall);
  headline.textContent = `Overall ${scores.display.overall}`;
  container.appendChild(headline);

  const list = document.createElement('ol');
  list.className = 'score-attributes';
  for (const row of rankAttributes(scores)) {
    const item = document.createElement('li');
    item.dataset.attribute = row.attribute;
    item.dataset.score = String(row.display);
    item.textContent = `${row.attribute.replace(/_/g, ' ')}: ${row.display}`;
    list.appendChild(item);
  }
  container.appendChild(list);
}
