"""Human-assisted rocket autopilot: telemetry streaming plus steering.

The simulation loop owns the environment and the planner (common-sense
mode by default: alpha 0, decisions maximize the diversity of reachable
futures).  Connected clients receive telemetry frames over a WebSocket
and may send steering messages; a steering direction becomes an action
prior the walkers sample from, so the autopilot follows the human only
when that does not lead into a crash.
"""

from __future__ import annotations

import argparse
import asyncio
import contextlib
import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np
# module-level so the postponed `ws: WebSocket` annotation resolves
from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .actions import ActionSpec
from .distributions import Distribution
from .envs import RocketEnv
from .planner import FmcPlanner
from .priors import FixedPrior, PriorProvider, blend_prior

# fixed 9-point discretization of the (main, side) thrust box used for
# steering priors: every combination of main in {0, .5, 1}, side in {-1, 0, 1}
STEERING_ACTIONS = np.array([
    [0.0, -1.0], [0.0, 0.0], [0.0, 1.0],
    [0.5, -1.0], [0.5, 0.0], [0.5, 1.0],
    [1.0, -1.0], [1.0, 0.0], [1.0, 1.0],
])

_DIRECTION_INDEX = {
    "up": 7,     # full main thrust, no torque
    "down": 1,   # engines off
    "left": 5,   # half thrust, positive torque
    "right": 3,  # half thrust, negative torque
}

DIRECTIONS = ("none", "up", "down", "left", "right")

# even at full steering strength a fraction of walkers keeps exploring;
# a point-mass prior would leave the autopilot no surviving alternative
# to veto a lethal command with
MAX_STEERING_CREDIBILITY = 0.8

TELEMETRY_SCHEMA = {
    "type": "object",
    "required": ["type", "frame", "sim_time", "rocket", "decision",
                 "steering", "alpha", "walkers_alive", "terminal"],
    "properties": {
        "type": {"const": "telemetry"},
        "frame": {"type": "integer", "minimum": 0},
        "sim_time": {"type": "number"},
        "rocket": {"type": "object"},
        "decision": {"type": "array", "items": {"type": "number"},
                     "minItems": 2, "maxItems": 2},
        "steering": {
            "type": "object",
            "required": ["direction", "strength"],
            "properties": {
                "direction": {"enum": list(DIRECTIONS)},
                "strength": {"type": "number", "minimum": 0, "maximum": 1},
            },
        },
        "alpha": {"type": "number"},
        "walkers_alive": {"type": "integer"},
        "terminal": {"type": "boolean"},
    },
}


@dataclass(frozen=True)
class SteeringMessage:
    direction: str = "none"
    strength: float = 0.0
    prior: tuple | None = None  # raw weights over STEERING_ACTIONS

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError("strength must be in [0, 1]")
        if self.prior is not None:
            Distribution(self.prior)  # validate

    @classmethod
    def from_json(cls, payload: dict) -> "SteeringMessage":
        if payload.get("type") != "steer":
            raise ValueError("not a steering message")
        prior = payload.get("prior")
        return cls(direction=payload.get("direction", "none"),
                   strength=float(payload.get("strength", 0.0)),
                   prior=tuple(prior) if prior is not None else None)


@dataclass
class SessionConfig:
    alpha: float = 0.0  # common-sense mode
    walkers: int = 100
    ticks: int = 15
    dt: float = 0.1
    fps: float = 10.0
    seed: int = 0
    reset_delay_s: float = 3.0


def apply_steering(msg: SteeringMessage, spec: ActionSpec) -> PriorProvider:
    """Turn a steering message into an action prior over the 9-point grid.

    The steered action gets weight 1/9 + strength * (1 - 1/9); the rest
    share the remainder.  ``none`` (or a zero strength) leaves the prior
    uniform.
    """
    n = len(STEERING_ACTIONS)
    if msg.prior is not None:
        return FixedPrior(Distribution(msg.prior))
    if msg.direction == "none" or msg.strength == 0.0:
        return FixedPrior(Distribution.uniform(n))
    idx = _DIRECTION_INDEX[msg.direction]
    w = 1.0 / n + msg.strength * (1.0 - 1.0 / n)
    weights = np.full(n, (1.0 - w) / (n - 1))
    weights[idx] = w
    return FixedPrior(Distribution(weights))


class HeadlessSession:
    """The simulation loop, synchronous and fully testable.

    ``frame()`` advances one decision: read the latest steering message,
    plan with the blended prior, apply the action, emit a telemetry
    frame.  The server wraps this in an async loop.
    """

    def __init__(self, config: SessionConfig | None = None,
                 env: RocketEnv | None = None):
        self.config = config or SessionConfig()
        self.env = env or RocketEnv()
        self.planner = FmcPlanner(
            env=self.env, n_walkers=self.config.walkers,
            ticks=self.config.ticks, dt=self.config.dt,
            alpha=self.config.alpha, seed=self.config.seed)
        self.rng = np.random.default_rng(self.config.seed)
        self.state = self.env.initial_state()
        self.steering = SteeringMessage()
        self.frame_index = 0
        self.sim_time = 0.0
        self._dead_since = None

    def set_steering(self, msg: SteeringMessage) -> None:
        """Last writer wins."""
        self.steering = msg

    def _sampler(self):
        msg = self.steering
        if msg.direction == "none" and msg.prior is None:
            return None  # identical to the pure autopilot
        provider = apply_steering(msg, self.env.action_spec)
        blended = blend_prior(provider.prior(self.state),
                              min(msg.strength, MAX_STEERING_CREDIBILITY))

        def sample(states, rng, n):
            idx = rng.choice(len(blended), size=n, p=blended.weights)
            return STEERING_ACTIONS[idx]

        return sample

    def frame(self) -> dict:
        """Advance one frame and return its telemetry dict."""
        frame_dt = 1.0 / self.config.fps
        dead = bool(self.env.is_dead(self.state[None, :])[0])
        if dead:
            if self._dead_since is None:
                self._dead_since = self.sim_time
            elif self.sim_time - self._dead_since >= self.config.reset_delay_s:
                self.state = self.env.initial_state()
                self._dead_since = None
                dead = False

        decision_vec = np.zeros(2)
        alive = 0
        if not dead:
            sampler = self._sampler()
            final_swarm = {}

            def on_tick(tick, swarm):
                final_swarm["swarm"] = swarm

            decision = self.planner.plan(
                self.state, rng=self.rng,
                initial_sampler=sampler, tick_sampler=sampler,
                on_tick=on_tick)
            decision_vec = np.asarray(decision.chosen, dtype=float)
            swarm = final_swarm["swarm"]
            alive = int(np.sum(~self.env.is_dead(swarm.states)))
            self.state = self.env.step(self.state[None, :],
                                       decision_vec[None, :], frame_dt)[0]

        telemetry = {
            "type": "telemetry",
            "frame": self.frame_index,
            "sim_time": round(self.sim_time, 6),
            "rocket": self.env.state_to_dict(self.state),
            "decision": decision_vec.tolist(),
            "steering": {"direction": self.steering.direction,
                         "strength": self.steering.strength},
            "alpha": self.config.alpha,
            "walkers_alive": alive,
            "terminal": bool(self.env.is_dead(self.state[None, :])[0]),
        }
        self.frame_index += 1
        self.sim_time += frame_dt
        return telemetry

    def run(self, n_frames: int) -> list:
        return [self.frame() for _ in range(n_frames)]


def create_app(config: SessionConfig | None = None, static_dir=None):
    """FastAPI app: WS /session for telemetry+steering, GET /config."""
    from fastapi.responses import FileResponse

    config = config or SessionConfig()
    app = FastAPI(title="fractalmc assisted control")
    session = HeadlessSession(config)
    clients: list[asyncio.Queue] = []
    app.state.session = session

    async def loop():
        frame_budget = 1.0 / config.fps
        while True:
            start = time.perf_counter()
            telemetry = await asyncio.to_thread(session.frame)
            for queue in list(clients):
                if queue.full():  # slow client: drop oldest
                    with contextlib.suppress(asyncio.QueueEmpty):
                        queue.get_nowait()
                with contextlib.suppress(asyncio.QueueFull):
                    queue.put_nowait(telemetry)
            elapsed = time.perf_counter() - start
            await asyncio.sleep(max(0.0, frame_budget - elapsed))

    @app.on_event("startup")
    async def _start():
        app.state.loop_task = asyncio.create_task(loop())

    @app.on_event("shutdown")
    async def _stop():
        app.state.loop_task.cancel()
        with contextlib.suppress(asyncio.CancelledError):
            await app.state.loop_task

    @app.get("/config")
    async def get_config():
        return asdict(config)

    @app.websocket("/session")
    async def ws_session(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue(maxsize=4)
        clients.append(queue)

        async def sender():
            while True:
                frame = await queue.get()
                await ws.send_text(json.dumps(frame))

        send_task = asyncio.create_task(sender())
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = SteeringMessage.from_json(json.loads(raw))
                except (ValueError, json.JSONDecodeError):
                    continue  # malformed: keep the previous prior
                session.set_steering(msg)
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            clients.remove(queue)

    if static_dir:
        @app.get("/")
        async def index():
            return FileResponse(f"{static_dir}/index.html")
        from fastapi.staticfiles import StaticFiles
        app.mount("/static", StaticFiles(directory=static_dir), name="static")

    return app


def main(argv=None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="fmc-serve")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--alpha", type=float, default=0.0)
    parser.add_argument("--walkers", type=int, default=100)
    parser.add_argument("--fps", type=float, default=10.0)
    parser.add_argument("--static", default=None,
                        help="directory with the browser client build")
    args = parser.parse_args(argv)
    config = SessionConfig(alpha=args.alpha, walkers=args.walkers, fps=args.fps)
    app = create_app(config, static_dir=args.static)
    uvicorn.run(app, host="0.0.0.0", port=args.port)
    return 0


if __name__ == "__main__":
    main()
