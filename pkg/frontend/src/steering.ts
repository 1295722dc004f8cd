import { Direction, SteeringMessage } from "./types.js";

/**
 * Map the held arrow keys to a steering direction.  No keys (or a
 * cancelling opposing pair) steers `none`; the vertical axis wins when
 * both axes are active, matching the thrust-first control scheme.
 */
export function keysToSteering(
  activeKeys: ReadonlySet<string>,
  strength: number,
): SteeringMessage {
  const up = activeKeys.has("ArrowUp");
  const down = activeKeys.has("ArrowDown");
  const left = activeKeys.has("ArrowLeft");
  const right = activeKeys.has("ArrowRight");

  const vertical: Direction | null =
    up === down ? null : up ? "up" : "down";
  const horizontal: Direction | null =
    left === right ? null : left ? "left" : "right";

  const direction: Direction = vertical ?? horizontal ?? "none";
  return {
    type: "steer",
    direction,
    strength: direction === "none" ? 0 : Math.min(1, Math.max(0, strength)),
  };
}

function sameMessage(a: SteeringMessage, b: SteeringMessage): boolean {
  return a.direction === b.direction && a.strength === b.strength;
}

/**
 * Outbound steering gate: a message goes out only when it differs from
 * the last one sent, and never more often than the rate limit (10/s).
 * A change arriving inside the quiet window is held and released by
 * `flush` once the window elapses, so no change is ever lost.
 */
export class SteeringSender {
  private lastSent: SteeringMessage | null = null;
  private lastSentAt = -Infinity;
  private pending: SteeringMessage | null = null;

  constructor(
    private readonly send: (msg: SteeringMessage) => void,
    private readonly minIntervalMs = 100,
  ) {}

  /** Offer the current steering state; returns true if sent now. */
  offer(msg: SteeringMessage, now: number): boolean {
    if (this.lastSent !== null && sameMessage(msg, this.lastSent)) {
      this.pending = null;
      return false;
    }
    if (now - this.lastSentAt < this.minIntervalMs) {
      this.pending = msg;
      return false;
    }
    this.lastSent = msg;
    this.lastSentAt = now;
    this.pending = null;
    this.send(msg);
    return true;
  }

  /** Release a held change once the rate window has elapsed. */
  flush(now: number): boolean {
    if (this.pending === null) return false;
    const msg = this.pending;
    return this.offer(msg, now);
  }
}
