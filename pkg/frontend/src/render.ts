import { ClientState } from "./state.js";
import { THEME, Viewport, worldScale, worldToCanvas } from "./theme.js";
import { TelemetryFrame } from "./types.js";

/**
 * Minimal 2D drawing surface: the subset of CanvasRenderingContext2D
 * the renderer uses, so tests can substitute a recorder.
 */
export interface DrawContext {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  globalAlpha: number;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  closePath(): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  save(): void;
  restore(): void;
  translate(x: number, y: number): void;
  rotate(angle: number): void;
}

function drawRocket(
  ctx: DrawContext,
  frame: TelemetryFrame,
  viewport: Viewport,
): void {
  const { rocket } = frame;
  const scale = worldScale(rocket.arena, viewport);
  const p = worldToCanvas(rocket.x, rocket.y, rocket.arena, viewport);
  ctx.save();
  ctx.translate(p.x, p.y);
  // heading pi/2 is "up" in world terms; canvas y is flipped
  ctx.rotate(Math.PI / 2 - rocket.heading);
  const r = 0.8 * scale;
  ctx.fillStyle = THEME.rocket;
  ctx.beginPath();
  ctx.moveTo(0, -1.6 * r);
  ctx.lineTo(r, r);
  ctx.lineTo(-r, r);
  ctx.closePath();
  ctx.fill();
  // thrust flame scaled by the autopilot's main-thrust decision
  const thrust = frame.decision[0];
  if (thrust > 0.05) {
    ctx.fillStyle = THEME.flame;
    ctx.beginPath();
    ctx.moveTo(-0.5 * r, r);
    ctx.lineTo(0, r + 1.5 * r * thrust);
    ctx.lineTo(0.5 * r, r);
    ctx.closePath();
    ctx.fill();
  }
  ctx.restore();
}

function drawHookAndRocks(
  ctx: DrawContext,
  frame: TelemetryFrame,
  viewport: Viewport,
): void {
  const { rocket } = frame;
  const scale = worldScale(rocket.arena, viewport);
  const rocketPos = worldToCanvas(rocket.x, rocket.y, rocket.arena, viewport);
  const hookPos = worldToCanvas(
    rocket.hook.x,
    rocket.hook.y,
    rocket.arena,
    viewport,
  );
  ctx.strokeStyle = THEME.band;
  ctx.lineWidth = Math.max(1, 0.08 * scale);
  ctx.beginPath();
  ctx.moveTo(rocketPos.x, rocketPos.y);
  ctx.lineTo(hookPos.x, hookPos.y);
  ctx.stroke();
  ctx.fillStyle = THEME.hook;
  ctx.beginPath();
  ctx.arc(hookPos.x, hookPos.y, Math.max(2, 0.2 * scale), 0, 2 * Math.PI);
  ctx.fill();

  for (const rock of rocket.rocks) {
    // a carried rock rides the hook; drawing it there mirrors the state
    const at = rock.carried
      ? hookPos
      : worldToCanvas(rock.x, rock.y, rocket.arena, viewport);
    ctx.fillStyle = rock.carried ? THEME.rockCarried : THEME.rock;
    ctx.beginPath();
    ctx.arc(at.x, at.y, 0.5 * scale, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawOverlays(
  ctx: DrawContext,
  frame: TelemetryFrame,
  state: ClientState,
  viewport: Viewport,
): void {
  const { rocket } = frame;
  // health bar
  const barW = viewport.width * 0.25;
  ctx.fillStyle = rocket.health > 0.3 ? THEME.healthOk : THEME.healthLow;
  ctx.fillRect(12, 12, barW * Math.max(0, Math.min(1, rocket.health)), 10);
  ctx.strokeStyle = THEME.text;
  ctx.lineWidth = 1;
  ctx.strokeRect(12, 12, barW, 10);
  // goal tally and sim clock
  ctx.fillStyle = THEME.text;
  ctx.font = "14px monospace";
  ctx.fillText(
    `rocks ${rocket.goal_tally}  t ${frame.sim_time.toFixed(1)}s  ` +
      `walkers ${frame.walkers_alive}`,
    12,
    40,
  );
  // echoed steering overlay
  ctx.fillStyle = THEME.steeringOverlay;
  ctx.fillText(
    `steer ${frame.steering.direction} @ ${frame.steering.strength.toFixed(2)}` +
      ` (slider ${state.strength.toFixed(2)})`,
    12,
    58,
  );
  if (frame.terminal || rocket.health <= 0) {
    ctx.fillStyle = THEME.healthLow;
    ctx.font = "32px monospace";
    ctx.fillText("crashed", viewport.width / 2 - 60, viewport.height / 2);
  }
}

export type RenderResult = "drawn" | "skipped";

/**
 * Draw the latest frame in the client state.  Malformed or absent
 * frames are skipped and flagged with an error badge.
 */
export function render(
  ctx: DrawContext,
  state: ClientState,
  viewport: Viewport,
): RenderResult {
  ctx.fillStyle = THEME.background;
  ctx.fillRect(0, 0, viewport.width, viewport.height);

  if (state.lastFrameError) {
    ctx.fillStyle = THEME.errorBadge;
    ctx.fillRect(viewport.width - 24, 8, 16, 16);
  }
  const frame = state.latestFrame;
  if (frame === null) {
    return "skipped";
  }

  const { rocket } = frame;
  // deploy zone
  const zone = worldToCanvas(
    rocket.deploy_zone.x,
    rocket.deploy_zone.y,
    rocket.arena,
    viewport,
  );
  const scale = worldScale(rocket.arena, viewport);
  ctx.strokeStyle = THEME.deployZone;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.arc(zone.x, zone.y, rocket.deploy_zone.radius * scale, 0, 2 * Math.PI);
  ctx.stroke();

  drawHookAndRocks(ctx, frame, viewport);
  drawRocket(ctx, frame, viewport);
  drawOverlays(ctx, frame, state, viewport);
  return "drawn";
}
