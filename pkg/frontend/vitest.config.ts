import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // Tests drive a real environment service subprocess and verify replay
    // logs through its CLI, so they need more than the default timeout.
    testTimeout: 120_000,
    hookTimeout: 30_000,
  },
});
