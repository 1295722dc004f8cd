/** Canvas coordinate mapping and the fixed color palette. */

export const THEME = {
  background: "#0b1020",
  ground: "#2a2f45",
  rocket: "#e8e6e3",
  flame: "#ff9f43",
  hook: "#9ad1ff",
  band: "#5a6b8c",
  rock: "#b08d57",
  rockCarried: "#ffd166",
  deployZone: "#2ecc71",
  healthOk: "#2ecc71",
  healthLow: "#e74c3c",
  text: "#e8e6e3",
  errorBadge: "#e74c3c",
  decisionArrow: "#9b59b6",
  steeringOverlay: "#3498db",
} as const;

export interface Viewport {
  width: number;
  height: number;
}

/**
 * World coordinates are y-up with the origin at the bottom-left of the
 * arena; the canvas is y-down.  Uniform scale, arena centered.
 */
export function worldToCanvas(
  wx: number,
  wy: number,
  arena: { width: number; height: number },
  viewport: Viewport,
): { x: number; y: number } {
  const scale = Math.min(
    viewport.width / arena.width,
    viewport.height / arena.height,
  );
  const offsetX = (viewport.width - arena.width * scale) / 2;
  const offsetY = (viewport.height - arena.height * scale) / 2;
  return {
    x: offsetX + wx * scale,
    y: viewport.height - offsetY - wy * scale,
  };
}

export function worldScale(
  arena: { width: number; height: number },
  viewport: Viewport,
): number {
  return Math.min(
    viewport.width / arena.width,
    viewport.height / arena.height,
  );
}
