import { render, DrawContext } from "./render.js";
import { ClientState } from "./state.js";
import { keysToSteering, SteeringSender } from "./steering.js";
import { SteeringMessage } from "./types.js";

const ARROW_KEYS = new Set([
  "ArrowUp",
  "ArrowDown",
  "ArrowLeft",
  "ArrowRight",
]);

export interface ClientOptions {
  url?: string;
  canvas: HTMLCanvasElement;
  strengthSlider?: HTMLInputElement;
}

/**
 * Wires the WebSocket, keyboard, and animation-frame loop together.
 * All socket and key callbacks only mutate ClientState; drawing and
 * outbound steering happen on animation frames, so a slow socket never
 * blocks the UI.
 */
export class PilotClient {
  readonly state = new ClientState();
  private readonly sender: SteeringSender;
  private socket: WebSocket | null = null;
  private running = false;

  constructor(private readonly options: ClientOptions) {
    this.sender = new SteeringSender((msg) => this.transmit(msg));
  }

  start(): void {
    const url =
      this.options.url ??
      `ws://${window.location.host}/session`;
    this.socket = new WebSocket(url);
    this.socket.onopen = () => {
      this.state.status = "open";
    };
    this.socket.onclose = () => {
      this.state.status = "closed";
    };
    this.socket.onmessage = (event) => {
      try {
        this.state.acceptFrame(JSON.parse(event.data as string));
      } catch {
        this.state.lastFrameError = true;
      }
    };

    window.addEventListener("keydown", (e) => {
      if (ARROW_KEYS.has(e.key)) {
        e.preventDefault();
        this.state.keyDown(e.key);
      }
    });
    window.addEventListener("keyup", (e) => {
      if (ARROW_KEYS.has(e.key)) {
        this.state.keyUp(e.key);
      }
    });
    this.options.strengthSlider?.addEventListener("input", () => {
      this.state.setStrength(Number(this.options.strengthSlider!.value));
    });

    this.running = true;
    requestAnimationFrame(() => this.tick());
  }

  stop(): void {
    this.running = false;
    this.socket?.close();
  }

  private tick(): void {
    if (!this.running) return;
    const now = performance.now();
    const msg = keysToSteering(this.state.activeKeys, this.state.strength);
    this.sender.offer(msg, now);
    this.sender.flush(now);

    const ctx = this.options.canvas.getContext("2d");
    if (ctx !== null) {
      render(ctx as unknown as DrawContext, this.state, {
        width: this.options.canvas.width,
        height: this.options.canvas.height,
      });
    }
    requestAnimationFrame(() => this.tick());
  }

  private transmit(msg: SteeringMessage): void {
    if (this.socket !== null && this.socket.readyState === WebSocket.OPEN) {
      this.socket.send(JSON.stringify(msg));
    }
  }
}
