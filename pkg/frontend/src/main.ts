import { createApp } from "./app";

const root = document.getElementById("app");
if (root) {
  const params = new URLSearchParams(window.location.search);
  const fixture = params.get("fixture") ?? undefined;
  const app = createApp(root, { fixture });
  const preset = params.get("q");
  if (preset) {
    const input = root.querySelector("input[name=q]") as HTMLInputElement;
    input.value = preset;
    void app.submit(preset, (params.get("mode") as "pcs" | "rpys") ?? "pcs");
  }
}
