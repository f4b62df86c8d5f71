// Canvas painter for scenes, plus marker hit-testing for hover tooltips.

import type { Camera } from "./camera.js";
import { worldToScreen } from "./camera.js";
import type { Marker, Scene } from "./scene.js";

const MARKER_PX = 6;

export function paintScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  cam: Camera,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.lineWidth = 1.4;
  for (const stroke of scene.strokes) {
    ctx.strokeStyle = stroke.color;
    ctx.beginPath();
    stroke.points.forEach(([x, y], i) => {
      const [px, py] = worldToScreen(cam, x, y, width, height);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    if (stroke.closed) ctx.closePath();
    ctx.stroke();
  }
  for (const m of scene.markers) {
    const [px, py] = worldToScreen(cam, m.x, m.y, width, height);
    ctx.strokeStyle = "#d82020";
    ctx.fillStyle = "#d82020";
    if (m.kind === "cusp") {
      ctx.beginPath();
      ctx.moveTo(px, py - MARKER_PX);
      ctx.lineTo(px - MARKER_PX, py + MARKER_PX);
      ctx.lineTo(px + MARKER_PX, py + MARKER_PX);
      ctx.closePath();
      ctx.fill();
    } else {
      ctx.beginPath();
      ctx.arc(px, py, MARKER_PX - 1, 0, 2 * Math.PI);
      ctx.stroke();
    }
  }
}

export function hitTestMarker(
  scene: Scene,
  cam: Camera,
  px: number,
  py: number,
  width: number,
  height: number,
  radius = MARKER_PX + 3,
): Marker | null {
  let best: Marker | null = null;
  let bestDist = radius;
  for (const m of scene.markers) {
    const [mx, my] = worldToScreen(cam, m.x, m.y, width, height);
    const dist = Math.hypot(mx - px, my - py);
    if (dist <= bestDist) {
      best = m;
      bestDist = dist;
    }
  }
  return best;
}
