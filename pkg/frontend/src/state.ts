import { TelemetryFrame, isTelemetryFrame } from "./types.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

/**
 * The single mutable client state.  Socket callbacks and key handlers
 * only write here; rendering reads it on animation frames.
 */
export class ClientState {
  status: ConnectionStatus = "connecting";
  latestFrame: TelemetryFrame | null = null;
  activeKeys = new Set<string>();
  strength = 0.8;
  /** set when the last inbound message was malformed */
  lastFrameError = false;

  /**
   * Accept an inbound frame.  Returns true when the frame became the
   * latest one; stale frames (index at or below the last rendered) and
   * malformed payloads are discarded.
   */
  acceptFrame(payload: unknown): boolean {
    if (!isTelemetryFrame(payload)) {
      this.lastFrameError = true;
      return false;
    }
    if (this.latestFrame !== null && payload.frame <= this.latestFrame.frame) {
      return false;
    }
    this.latestFrame = payload;
    this.lastFrameError = false;
    return true;
  }

  keyDown(key: string): void {
    this.activeKeys.add(key);
  }

  keyUp(key: string): void {
    this.activeKeys.delete(key);
  }

  setStrength(value: number): void {
    this.strength = Math.min(1, Math.max(0, value));
  }
}
