/** Wire types shared with the assist server. */

export type Direction = "none" | "up" | "down" | "left" | "right";

export interface SteeringMessage {
  type: "steer";
  direction: Direction;
  strength: number;
}

export interface Vec {
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface RockState extends Vec {
  carried: boolean;
}

export interface RocketState {
  x: number;
  y: number;
  vx: number;
  vy: number;
  heading: number;
  omega: number;
  health: number;
  hook: Vec;
  rocks: RockState[];
  deploy_zone: { x: number; y: number; radius: number };
  arena: { width: number; height: number };
  goal_tally: number;
}

export interface TelemetryFrame {
  type: "telemetry";
  frame: number;
  sim_time: number;
  rocket: RocketState;
  decision: [number, number];
  steering: { direction: Direction; strength: number };
  alpha: number;
  walkers_alive: number;
  terminal: boolean;
}

/** Narrowing guard: a frame we are willing to render. */
export function isTelemetryFrame(value: unknown): value is TelemetryFrame {
  if (typeof value !== "object" || value === null) return false;
  const v = value as Record<string, unknown>;
  return (
    v.type === "telemetry" &&
    typeof v.frame === "number" &&
    Number.isInteger(v.frame) &&
    (v.frame as number) >= 0 &&
    typeof v.sim_time === "number" &&
    typeof v.rocket === "object" &&
    v.rocket !== null &&
    Array.isArray(v.decision) &&
    (v.decision as unknown[]).length === 2 &&
    typeof v.terminal === "boolean"
  );
}
