import { ApiClient } from "./api";
import { App } from "./app";
import { DEFAULT_CONFIG, type AppConfig } from "./types";

async function loadConfig(): Promise<AppConfig> {
  try {
    const resp = await fetch("./config.json");
    if (!resp.ok) return DEFAULT_CONFIG;
    return { ...DEFAULT_CONFIG, ...(await resp.json()) };
  } catch {
    return DEFAULT_CONFIG;
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const config = await loadConfig();
  const app = new App(root, config, new ApiClient(config.apiBase));
  await app.start();
}

void boot();
