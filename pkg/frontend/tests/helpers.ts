import { TelemetryFrame } from "../src/types.js";

export function makeFrame(overrides: Partial<TelemetryFrame> = {}): TelemetryFrame {
  return {
    type: "telemetry",
    frame: 0,
    sim_time: 0,
    rocket: {
      x: 12,
      y: 14,
      vx: 0,
      vy: 0,
      heading: Math.PI / 2,
      omega: 0,
      health: 1,
      hook: { x: 12, y: 12, vx: 0, vy: 0 },
      rocks: [
        { x: 10, y: 20, vx: 0, vy: 0, carried: false },
        { x: 30, y: 22, vx: 0, vy: 0, carried: false },
      ],
      deploy_zone: { x: 34, y: 6, radius: 3 },
      arena: { width: 40, height: 30 },
      goal_tally: 0,
    },
    decision: [0.5, 0],
    steering: { direction: "none", strength: 0 },
    alpha: 0,
    walkers_alive: 100,
    terminal: false,
    ...overrides,
  };
}
