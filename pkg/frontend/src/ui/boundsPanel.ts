/**
 * Bound editor for the selected element group: one row per parameter
 * kind with lower/upper inputs. Invalid pairs are rejected inline by the
 * session (no request leaves the client) and the reason is shown next to
 * the row.
 */

import type { StudioSession } from '../session.js';
import type { ParamKind } from '../types.js';

const KINDS: Array<{ kind: ParamKind; label: string }> = [
  { kind: 'translation-x', label: 'translate x (m)' },
  { kind: 'translation-y', label: 'translate y (m)' },
  { kind: 'rotation', label: 'rotate (rad)' },
];

export class BoundsPanel {
  private groupId: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly session: StudioSession,
    private readonly onChange: () => void,
  ) {}

  setGroup(groupId: string | null): void {
    this.groupId = groupId;
    this.render();
  }

  render(): void {
    this.root.textContent = '';
    if (!this.groupId) {
      const hint = document.createElement('p');
      hint.className = 'hint';
      hint.textContent = 'Select a wall to edit its group bounds.';
      this.root.appendChild(hint);
      return;
    }
    const title = document.createElement('h3');
    title.textContent = `group: ${this.groupId}`;
    this.root.appendChild(title);
    const params = this.session.document.params ?? [];
    for (const { kind, label } of KINDS) {
      const current = params.find((p) => p.group === this.groupId && p.kind === kind);
      this.root.appendChild(this.row(kind, label, current?.lower, current?.upper));
    }
  }

  private row(kind: ParamKind, label: string, lower?: number, upper?: number): HTMLElement {
    const row = document.createElement('div');
    row.className = 'bound-row';
    row.dataset.kind = kind;

    const caption = document.createElement('label');
    caption.textContent = label;
    row.appendChild(caption);

    const lo = document.createElement('input');
    lo.type = 'number';
    lo.step = 'any';
    lo.className = 'bound-lower';
    if (lower !== undefined) lo.value = String(lower);
    const hi = document.createElement('input');
    hi.type = 'number';
    hi.step = 'any';
    hi.className = 'bound-upper';
    if (upper !== undefined) hi.value = String(upper);
    row.appendChild(lo);
    row.appendChild(hi);

    const apply = document.createElement('button');
    apply.textContent = 'set';
    apply.className = 'bound-apply';
    row.appendChild(apply);

    const error = document.createElement('span');
    error.className = 'bound-error';
    row.appendChild(error);

    apply.addEventListener('click', () => {
      error.textContent = '';
      if (lo.value === '' || hi.value === '') {
        error.textContent = 'both bounds required';
        return;
      }
      const result = this.session.setBounds(
        this.groupId!,
        kind,
        Number(lo.value),
        Number(hi.value),
      );
      if (!result.ok) {
        error.textContent = result.message;
        return;
      }
      this.onChange();
    });
    return row;
  }
}
