// Wire types mirroring the engine's JSON result document (schema ovalkit/1).

export interface ArcData {
  points: [number, number][];
  params: number[] | null;
  side: string;
  closed: boolean;
}

export interface PolylineData {
  arcs: ArcData[];
  gap_reasons: string[];
}

export interface SingularPointData {
  kind: "cusp" | "crunode" | "tangential";
  location: [number, number];
  params: number[];
  method: string;
  residual: number;
}

export interface OffsetEntry {
  d: number;
  side: string;
  polyline: PolylineData;
}

export interface EnvelopeEntry {
  d: number;
  polyline: PolylineData;
}

export interface ResultDocument {
  schema: string;
  engine: string;
  scenario: Record<string, unknown>;
  progenitor: PolylineData;
  offsets: OffsetEntry[];
  envelopes: EnvelopeEntry[];
  contours: Record<string, PolylineData>;
  singular_points: SingularPointData[];
  diagnostics: {
    gap_reasons: Record<string, number>;
    rejected_seeds: unknown[];
    tangential_contacts: unknown[];
    shape_class: string | null;
  };
}

export interface ControlState {
  a: number;
  b: number;
  d: number;
  side: "left" | "right" | "both";
  showSingular: boolean;
  showEnvelope: boolean;
  samples: number;
}

export const SLIDER_BOUNDS = { min: 0.05, max: 10.0 };

export function clampControl(value: number): number {
  return Math.min(SLIDER_BOUNDS.max, Math.max(SLIDER_BOUNDS.min, value));
}
