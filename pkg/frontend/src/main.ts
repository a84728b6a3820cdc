import { ServiceClient } from "./api.js";
import { App } from "./app.js";

// The service URL can be overridden with ?api=http://host:port when the
// static files are served separately from the exercise service.
const api = new URLSearchParams(window.location.search).get("api") ?? "";
const root = document.getElementById("app");
if (root) {
  void new App(root, new ServiceClient(api)).boot();
}
