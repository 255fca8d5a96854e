/// <reference types="vitest" />
import { defineConfig } from 'vite';

export default defineConfig({
  build: {
    // the Python service serves this directory at /
    outDir: '../src/composize/static',
    emptyOutDir: true,
  },
  server: {
    proxy: {
      '/api': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
  },
});
