/**
 * Pure layout-document editing. Every operation returns a new document
 * (or a validation error) and never mutates its input, so the session's
 * undo stack can hold plain references.
 *
 * Validation mirrors the server's schema checks field for field; an edit
 * the client rejects here would come back as a 400 with the same path.
 */

import type { LayoutDocument, ParamKind, Vec2 } from './types.js';

export interface EditOk {
  ok: true;
  doc: LayoutDocument;
}

export interface EditRejected {
  ok: false;
  /** schema-style field path, e.g. "params[1].lower" */
  path: string;
  message: string;
}

export type EditResult = EditOk | EditRejected;

export function cloneDocument(doc: LayoutDocument): LayoutDocument {
  return JSON.parse(JSON.stringify(doc)) as LayoutDocument;
}

export function documentsEqual(a: LayoutDocument, b: LayoutDocument): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

function rejected(path: string, message: string): EditRejected {
  return { ok: false, path, message };
}

export function paramIndex(doc: LayoutDocument, groupId: string, kind: ParamKind): number {
  const params = doc.params ?? [];
  return params.findIndex((p) => p.group === groupId && p.kind === kind);
}

/**
 * Set (or add) the bound pair for one group parameter. Rejects without
 * touching the document when the pair is invalid, so no request is made.
 */
export function setParamBound(
  doc: LayoutDocument,
  groupId: string,
  kind: ParamKind,
  lower: number,
  upper: number,
): EditResult {
  const groups = doc.groups ?? [];
  if (!groups.some((g) => g.id === groupId)) {
    return rejected('params', `unknown group '${groupId}'`);
  }
  const existing = paramIndex(doc, groupId, kind);
  const slot = existing >= 0 ? existing : (doc.params ?? []).length;
  if (!Number.isFinite(lower)) {
    return rejected(`params[${slot}].lower`, 'number must be finite');
  }
  if (!Number.isFinite(upper)) {
    return rejected(`params[${slot}].upper`, 'number must be finite');
  }
  if (lower > upper) {
    return rejected(`params[${slot}]`, `lower ${lower} exceeds upper ${upper}`);
  }
  if (kind === 'rotation' && (lower < -Math.PI || upper > Math.PI)) {
    return rejected(`params[${slot}]`, 'rotation bounds must stay within [-pi, pi]');
  }
  const next = cloneDocument(doc);
  next.params = next.params ?? [];
  if (existing >= 0) {
    next.params[existing] = { group: groupId, kind, lower, upper };
  } else {
    next.params.push({ group: groupId, kind, lower, upper });
  }
  return { ok: true, doc: next };
}

/** Drop one group parameter (freezing that degree of freedom). */
export function removeParam(doc: LayoutDocument, groupId: string, kind: ParamKind): EditResult {
  const existing = paramIndex(doc, groupId, kind);
  if (existing < 0) {
    return rejected('params', `no ${kind} parameter on group '${groupId}'`);
  }
  const next = cloneDocument(doc);
  next.params!.splice(existing, 1);
  return { ok: true, doc: next };
}

/** Replace one analysis region with a painted polygon. */
export function setRegion(
  doc: LayoutDocument,
  which: 'query' | 'reference',
  polygon: Vec2[],
): EditResult {
  if (polygon.length < 3) {
    return rejected(`regions.${which}`, 'expected a polygon with at least 3 vertices');
  }
  for (let i = 0; i < polygon.length; i++) {
    const [x, y] = polygon[i];
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      return rejected(`regions.${which}[${i}]`, 'expected finite coordinates');
    }
  }
  const next = cloneDocument(doc);
  next.regions = { ...next.regions, [which]: polygon.map((p) => [p[0], p[1]] as Vec2) };
  return { ok: true, doc: next };
}

/** Unpaint a region; the document can no longer launch a job until repainted. */
export function clearRegion(doc: LayoutDocument, which: 'query' | 'reference'): EditOk {
  const next = cloneDocument(doc);
  next.regions = { ...next.regions, [which]: [] };
  return { ok: true, doc: next };
}

/**
 * Client-side mirror of the server's document validation: returns the
 * first schema violation as a (path, message) pair, or null when the
 * document would be accepted.
 */
export function validateDocument(doc: LayoutDocument): EditRejected | null {
  if (doc.schema_version !== '1') {
    return rejected('schema_version', `unsupported schema_version '${doc.schema_version}'`);
  }
  const ids = new Set<string>();
  for (let i = 0; i < doc.walls.length; i++) {
    const w = doc.walls[i];
    if (ids.has(w.id)) return rejected(`walls[${i}]`, `duplicate wall id '${w.id}'`);
    ids.add(w.id);
    if (w.a[0] === w.b[0] && w.a[1] === w.b[1]) {
      return rejected(`walls[${i}]`, 'zero-length wall');
    }
  }
  const owned = new Set<string>();
  const groupIds = new Set<string>();
  for (let i = 0; i < (doc.groups ?? []).length; i++) {
    const g = doc.groups![i];
    if (groupIds.has(g.id)) return rejected(`groups[${i}]`, `duplicate group id '${g.id}'`);
    groupIds.add(g.id);
    if (g.walls.length === 0) {
      return rejected(`groups[${i}].walls`, 'expected a non-empty list of wall ids');
    }
    for (const wallId of g.walls) {
      if (!ids.has(wallId)) return rejected(`groups[${i}].walls`, `unknown wall '${wallId}'`);
      if (owned.has(wallId)) return rejected(`groups[${i}].walls`, `wall '${wallId}' already grouped`);
      owned.add(wallId);
    }
  }
  for (let i = 0; i < (doc.params ?? []).length; i++) {
    const p = doc.params![i];
    if (!groupIds.has(p.group)) return rejected(`params[${i}].group`, `unknown group '${p.group}'`);
    if (p.lower > p.upper) return rejected(`params[${i}]`, `lower ${p.lower} exceeds upper ${p.upper}`);
    if (p.kind === 'rotation' && (p.lower < -Math.PI || p.upper > Math.PI)) {
      return rejected(`params[${i}]`, 'rotation bounds must stay within [-pi, pi]');
    }
  }
  if (doc.grid.width <= 0 || doc.grid.height <= 0) {
    return rejected('grid', 'width and height must be positive');
  }
  if (doc.grid.resolution <= 0) {
    return rejected('grid', 'resolution must be positive');
  }
  for (const which of ['query', 'reference'] as const) {
    if (doc.regions[which].length < 3) {
      return rejected(`regions.${which}`, 'expected a polygon with at least 3 vertices');
    }
  }
  return null;
}

/** Both regions painted and non-degenerate: a job may be launched. */
export function regionsReady(doc: LayoutDocument): boolean {
  return doc.regions.query.length >= 3 && doc.regions.reference.length >= 3;
}
