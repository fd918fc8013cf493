import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    include: ['tests/**/*.test.ts'],
    // the round-trip suite runs a real optimization job
    testTimeout: 120_000,
    hookTimeout: 60_000,
  },
});
