import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8606";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}
const app = new App(root, new ApiClient(baseUrl));
void app.init().catch((err) => {
  const banner = document.getElementById("error-banner");
  if (banner) {
    banner.hidden = false;
    banner.textContent = `cannot reach ${baseUrl}: ${err}`;
  }
});
