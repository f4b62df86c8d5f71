// Pure scene construction: a result document becomes strokes and markers
// in world coordinates.  One stroke per arc, so gaps in the data are gaps
// on screen; every coordinate is copied verbatim from the document.

import type { PolylineData, ResultDocument, SingularPointData } from "./types.js";

export interface Stroke {
  points: [number, number][];
  color: string;
  closed: boolean;
}

export interface Marker {
  x: number;
  y: number;
  kind: SingularPointData["kind"];
  label: string;
}

export interface Scene {
  strokes: Stroke[];
  markers: Marker[];
  badge: string | null;
  bounds: { xmin: number; xmax: number; ymin: number; ymax: number } | null;
}

export const COLORS = {
  progenitor: "#7b2d8b",
  left: "#1a7a1a",
  right: "#1f4fd8",
  envelope: "#d87f1f",
  contour: "#999999",
  true_oval: "#333333",
} as const;

function markerLabel(p: SingularPointData): string {
  const params =
    p.params.length === 1
      ? `t=${p.params[0].toFixed(6)}`
      : `(s,t)=(${p.params[0].toFixed(6)}, ${p.params[1].toFixed(6)})`;
  return `${p.kind} ${params} residual=${p.residual.toExponential(2)}`;
}

function addPolyline(scene: Scene, poly: PolylineData, color: string): void {
  for (const arc of poly.arcs) {
    if (arc.points.length < 2) continue;
    scene.strokes.push({ points: arc.points, color, closed: arc.closed });
  }
}

export function buildScene(doc: ResultDocument | null): Scene {
  const scene: Scene = { strokes: [], markers: [], badge: null, bounds: null };
  if (!doc) return scene;
  addPolyline(scene, doc.progenitor, COLORS.progenitor);
  for (const entry of doc.offsets) {
    addPolyline(scene, entry.polyline, entry.side === "left" ? COLORS.left : COLORS.right);
  }
  for (const entry of doc.envelopes) addPolyline(scene, entry.polyline, COLORS.envelope);
  for (const [name, poly] of Object.entries(doc.contours)) {
    addPolyline(scene, poly, name === "true_oval" ? COLORS.true_oval : COLORS.contour);
  }
  for (const p of doc.singular_points) {
    scene.markers.push({ x: p.location[0], y: p.location[1], kind: p.kind, label: markerLabel(p) });
  }
  scene.badge = doc.diagnostics.shape_class;
  scene.bounds = sceneBounds(scene);
  return scene;
}

function sceneBounds(scene: Scene) {
  let xmin = Infinity,
    xmax = -Infinity,
    ymin = Infinity,
    ymax = -Infinity;
  for (const s of scene.strokes) {
    for (const [x, y] of s.points) {
      xmin = Math.min(xmin, x);
      xmax = Math.max(xmax, x);
      ymin = Math.min(ymin, y);
      ymax = Math.max(ymax, y);
    }
  }
  for (const m of scene.markers) {
    xmin = Math.min(xmin, m.x);
    xmax = Math.max(xmax, m.x);
    ymin = Math.min(ymin, m.y);
    ymax = Math.max(ymax, m.y);
  }
  return xmin <= xmax ? { xmin, xmax, ymin, ymax } : null;
}

// Runtime audit used in tests and dev builds: every drawn coordinate must
// literally originate in the document (single source of truth).
export function assertSceneFromDocument(scene: Scene, doc: ResultDocument): void {
  const coords = new Set<string>();
  const addAll = (poly: PolylineData) => {
    for (const arc of poly.arcs) for (const [x, y] of arc.points) coords.add(`${x},${y}`);
  };
  addAll(doc.progenitor);
  doc.offsets.forEach((o) => addAll(o.polyline));
  doc.envelopes.forEach((e) => addAll(e.polyline));
  Object.values(doc.contours).forEach(addAll);
  for (const s of scene.strokes) {
    for (const [x, y] of s.points) {
      if (!coords.has(`${x},${y}`)) {
        throw new Error(`scene coordinate (${x}, ${y}) does not come from the document`);
      }
    }
  }
  const locs = new Set(doc.singular_points.map((p) => `${p.location[0]},${p.location[1]}`));
  for (const m of scene.markers) {
    if (!locs.has(`${m.x},${m.y}`)) {
      throw new Error(`marker (${m.x}, ${m.y}) does not come from the document`);
    }
  }
}
