/**
 * Entry point: mount the studio against the service URL given by
 * `?api=...` (default same-origin :8000) and offer a file picker plus a
 * bundled demo plan to get started.
 */

import { ApiClient } from './api.js';
import { StudioApp } from './ui/app.js';
import type { LayoutDocument } from './types.js';

const params = new URLSearchParams(window.location.search);
const apiBase = params.get('api') ?? `${window.location.protocol}//${window.location.hostname}:8000`;

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

const app = new StudioApp(root, new ApiClient(apiBase));

const picker = document.getElementById('layout-file') as HTMLInputElement | null;
picker?.addEventListener('change', async () => {
  const file = picker.files?.[0];
  if (!file) return;
  const doc = JSON.parse(await file.text()) as LayoutDocument;
  await app.loadDocument(doc);
});

const demoButton = document.getElementById('load-demo');
demoButton?.addEventListener('click', async () => {
  const res = await fetch('./demo-layout.json');
  await app.loadDocument((await res.json()) as LayoutDocument);
});
