// Fixed port for the API server the e2e suite talks to; the global setup
// starts it and tears it down.
export const E2E_PORT = 8973;
export const E2E_BASE = `http://127.0.0.1:${E2E_PORT}`;
