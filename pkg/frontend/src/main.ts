// Explorer wiring: sliders -> debounced latest-wins requests -> scene ->
// canvas, with pan/zoom and marker hover.  All geometry comes from the
// service; the only local math is the camera transform.

import { fetchDocument, requestUrl } from "./api.js";
import { Camera, fitBounds, panBy, zoomAt } from "./camera.js";
import { debounceRated } from "./debounce.js";
import { LatestWins } from "./latest.js";
import { hitTestMarker, paintScene } from "./render.js";
import { assertSceneFromDocument, buildScene, Scene } from "./scene.js";
import { clampControl, ControlState, ResultDocument } from "./types.js";

const DEV_AUDIT = new URLSearchParams(location.search).has("audit");

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

const canvas = $("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const badge = $("badge");
const status = $("status");
const toast = $("toast");

const state: ControlState = {
  a: 1.0,
  b: 1.0,
  d: 0.5,
  side: "both",
  showSingular: true,
  showEnvelope: false,
  samples: 1200,
};

let scene: Scene = buildScene(null);
let camera: Camera = { cx: 0, cy: 0, scale: 80 };
let cameraFitted = false;

function repaint(): void {
  paintScene(ctx, scene, camera, canvas.width, canvas.height);
}

function showToast(text: string): void {
  toast.textContent = text;
  toast.classList.add("visible");
  setTimeout(() => toast.classList.remove("visible"), 2500);
}

const gate = new LatestWins<ResultDocument>(
  fetchDocument,
  ({ doc, url }) => {
    scene = buildScene(doc);
    if (DEV_AUDIT) assertSceneFromDocument(scene, doc);
    badge.textContent = scene.badge ?? "-";
    status.textContent = `${doc.singular_points.length} singular point(s) | ${url}`;
    if (!cameraFitted && scene.bounds) {
      camera = fitBounds(scene.bounds, canvas.width, canvas.height);
      cameraFitted = true;
    }
    repaint();
  },
  (err) => showToast(`service error: ${String(err)}`), // last good frame stays
);

const requestUpdate = debounceRated<ControlState>(
  (s) => gate.request(requestUrl(s)),
  80,
  10,
);

function bindSlider(id: string, key: "a" | "b" | "d"): void {
  const input = $(id) as HTMLInputElement;
  const label = $(`${id}-value`);
  input.addEventListener("input", () => {
    state[key] = clampControl(parseFloat(input.value));
    label.textContent = state[key].toFixed(2);
    const e = state.b / state.a;
    $("ratio").textContent = e.toFixed(3);
    requestUpdate({ ...state });
  });
}

bindSlider("slider-a", "a");
bindSlider("slider-b", "b");
bindSlider("slider-d", "d");

($("side") as HTMLSelectElement).addEventListener("change", (ev) => {
  state.side = (ev.target as HTMLSelectElement).value as ControlState["side"];
  requestUpdate({ ...state });
});
($("overlay-singular") as HTMLInputElement).addEventListener("change", (ev) => {
  state.showSingular = (ev.target as HTMLInputElement).checked;
  requestUpdate({ ...state });
});
($("overlay-envelope") as HTMLInputElement).addEventListener("change", (ev) => {
  state.showEnvelope = (ev.target as HTMLInputElement).checked;
  requestUpdate({ ...state });
});

// pan / zoom / hover
let dragging = false;
let lastX = 0;
let lastY = 0;
canvas.addEventListener("mousedown", (ev) => {
  dragging = true;
  lastX = ev.offsetX;
  lastY = ev.offsetY;
});
window.addEventListener("mouseup", () => (dragging = false));
canvas.addEventListener("mousemove", (ev) => {
  if (dragging) {
    camera = panBy(camera, ev.offsetX - lastX, ev.offsetY - lastY);
    lastX = ev.offsetX;
    lastY = ev.offsetY;
    repaint();
    return;
  }
  const hit = hitTestMarker(scene, camera, ev.offsetX, ev.offsetY, canvas.width, canvas.height);
  canvas.title = hit ? hit.label : "";
});
canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  camera = zoomAt(camera, ev.offsetX, ev.offsetY, ev.deltaY < 0 ? 1.15 : 1 / 1.15, canvas.width, canvas.height);
  repaint();
});
$("fit").addEventListener("click", () => {
  if (scene.bounds) {
    camera = fitBounds(scene.bounds, canvas.width, canvas.height);
    repaint();
  }
});

// initial frame
requestUpdate({ ...state });
