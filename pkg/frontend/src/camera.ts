// Pan/zoom camera: world -> screen is a uniform scale plus translation,
// with the y axis flipped for screen space.

export interface Camera {
  cx: number; // world point at the canvas centre
  cy: number;
  scale: number; // pixels per world unit
}

export function fitBounds(
  bounds: { xmin: number; xmax: number; ymin: number; ymax: number },
  width: number,
  height: number,
  margin = 0.08,
): Camera {
  const w = Math.max(bounds.xmax - bounds.xmin, 1e-9);
  const h = Math.max(bounds.ymax - bounds.ymin, 1e-9);
  const scale = Math.min(width / (w * (1 + 2 * margin)), height / (h * (1 + 2 * margin)));
  return { cx: (bounds.xmin + bounds.xmax) / 2, cy: (bounds.ymin + bounds.ymax) / 2, scale };
}

export function worldToScreen(cam: Camera, x: number, y: number, width: number, height: number): [number, number] {
  return [width / 2 + (x - cam.cx) * cam.scale, height / 2 - (y - cam.cy) * cam.scale];
}

export function screenToWorld(cam: Camera, px: number, py: number, width: number, height: number): [number, number] {
  return [cam.cx + (px - width / 2) / cam.scale, cam.cy - (py - height / 2) / cam.scale];
}

export function zoomAt(cam: Camera, px: number, py: number, factor: number, width: number, height: number): Camera {
  const [wx, wy] = screenToWorld(cam, px, py, width, height);
  const scale = cam.scale * factor;
  // keep the world point under the cursor fixed
  return {
    scale,
    cx: wx - (px - width / 2) / scale,
    cy: wy + (py - height / 2) / scale,
  };
}

export function panBy(cam: Camera, dpx: number, dpy: number): Camera {
  return { ...cam, cx: cam.cx - dpx / cam.scale, cy: cam.cy + dpy / cam.scale };
}
