/**
 * Diversity gallery: one card per member with its objective values as
 * reported by the service, a heatmap-overlay toggle per card, a
 * superimposed comparison toggle, and a choose button that accepts the
 * member as the next round's base.
 */

import type { Gallery, GalleryCard } from '../session.js';

export interface GalleryCallbacks {
  onInspect: (card: GalleryCard, overlay: boolean) => void;
  onSuperimpose: (enabled: boolean) => void;
  onChoose: (index: number) => void;
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(4);
}

export class GalleryView {
  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: GalleryCallbacks,
  ) {}

  clear(): void {
    this.root.textContent = '';
  }

  render(gallery: Gallery): void {
    this.clear();

    const superRow = document.createElement('label');
    superRow.className = 'superimpose-toggle';
    const superBox = document.createElement('input');
    superBox.type = 'checkbox';
    superBox.addEventListener('change', () => this.callbacks.onSuperimpose(superBox.checked));
    superRow.appendChild(superBox);
    superRow.appendChild(document.createTextNode(' superimpose all members'));
    this.root.appendChild(superRow);

    for (const card of gallery.cards) {
      this.root.appendChild(this.card(card));
    }
  }

  private card(card: GalleryCard): HTMLElement {
    const el = document.createElement('div');
    el.className = 'member-card';
    el.dataset.index = String(card.index);

    const title = document.createElement('h4');
    title.textContent = `member ${card.index}`;
    el.appendChild(title);

    const list = document.createElement('dl');
    const rows: Array<[string, number]> = [
      ['degree', card.summary.degree],
      ['depth', card.summary.depth],
      ['entropy', card.summary.entropy],
      ['penalty', card.summary.penalty],
      ['combined', card.summary.combined],
    ];
    for (const [name, value] of rows) {
      const dt = document.createElement('dt');
      dt.textContent = name;
      const dd = document.createElement('dd');
      dd.dataset.metric = name;
      dd.textContent = fmt(value);
      list.appendChild(dt);
      list.appendChild(dd);
    }
    el.appendChild(list);

    const overlay = document.createElement('label');
    const overlayBox = document.createElement('input');
    overlayBox.type = 'checkbox';
    overlayBox.className = 'overlay-toggle';
    overlay.appendChild(overlayBox);
    overlay.appendChild(document.createTextNode(' heatmap'));
    el.appendChild(overlay);

    const inspect = document.createElement('button');
    inspect.textContent = 'view';
    inspect.addEventListener('click', () => this.callbacks.onInspect(card, overlayBox.checked));
    el.appendChild(inspect);

    const choose = document.createElement('button');
    choose.textContent = 'use as base';
    choose.className = 'choose-member';
    choose.addEventListener('click', () => this.callbacks.onChoose(card.index));
    el.appendChild(choose);

    return el;
  }
}
