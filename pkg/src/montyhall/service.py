"""HTTP service hosting live game sessions against a biased simulated host.

A session walks a strict phase machine:

    awaiting_pick -> (Game I)  awaiting_decision (host door revealed) -> resolved
    awaiting_pick -> (Game II) awaiting_commit   (no reveal yet)      -> resolved

The car's location is drawn when the session is created and is absent from
every response until the session resolves; out-of-order requests get 409
and mutate nothing. Aggregate win statistics per (variant, exact bias,
decision) ride alongside exact theory rates so a client can overlay
practice on theory without rederiving anything.

State is in-memory, with an optional append-only JSONL transcript log.
Errors use the flat shape {"code": int, "message": str}.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from random import Random
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import serialize
from .analytics import game_two_win, posterior_given_opened
from .model import (
    BoxLabel,
    Decision,
    GameVariant,
    Outcome,
    host_choose,
    play,
)
from .simulation import wilson_interval

_CAR_ORDER = (BoxLabel.T, BoxLabel.L, BoxLabel.R)

PHASE_AWAITING_PICK = "awaiting_pick"
PHASE_AWAITING_COMMIT = "awaiting_commit"
PHASE_AWAITING_DECISION = "awaiting_decision"
PHASE_RESOLVED = "resolved"


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class Session:
    id: str
    variant: GameVariant
    bias: Fraction
    hidden_car: BoxLabel
    host_draw: float
    phase: str = PHASE_AWAITING_PICK
    host_opened: BoxLabel | None = None
    decision: Decision | None = None
    outcome: Outcome | None = None
    created_at: str = field(default_factory=_now)
    resolved_at: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def public_view(self) -> dict[str, Any]:
        """The serializable state; the car never appears before resolution."""
        view: dict[str, Any] = {
            "id": self.id,
            "variant": self.variant.value,
            "q": serialize.rational_json(self.bias),
            "phase": self.phase,
            "created_at": self.created_at,
        }
        if self.host_opened is not None and (
            self.variant is GameVariant.GAME_I or self.phase == PHASE_RESOLVED
        ):
            view["host_opened"] = self.host_opened.value
        if self.phase == PHASE_RESOLVED:
            view["car"] = self.hidden_car.value
            view["decision"] = self.decision.value
            view["outcome"] = self.outcome.value
            view["resolved_at"] = self.resolved_at
        return view


@dataclass
class _BucketCounts:
    games: int = 0
    wins: int = 0
    by_opened: dict[BoxLabel, list[int]] = field(
        default_factory=lambda: {BoxLabel.L: [0, 0], BoxLabel.R: [0, 0]}
    )


class GameServer:
    """Session store, RNG, aggregate counters, and the transcript log."""

    def __init__(
        self,
        default_bias: Fraction = Fraction(1, 2),
        transcript_log: str | None = None,
        rng_seed: int | None = None,
    ):
        self.default_bias = default_bias
        self.sessions: dict[str, Session] = {}
        self.stats: dict[tuple[GameVariant, Fraction, Decision], _BucketCounts] = {}
        self._rng = Random(rng_seed)
        self._state_lock = threading.Lock()
        self._log_path = transcript_log
        self._log_lock = threading.Lock()

    # -- session lifecycle

    def create_session(self, variant: GameVariant, bias: Fraction) -> Session:
        with self._state_lock:
            session = Session(
                id=uuid.uuid4().hex,
                variant=variant,
                bias=bias,
                hidden_car=_CAR_ORDER[self._rng.randrange(3)],
                host_draw=self._rng.random(),
            )
            self.sessions[session.id] = session
        return session

    def get_session(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id}")
        return session

    def submit_pick(self, session_id: str) -> Session:
        session = self.get_session(session_id)
        with session.lock:
            if session.phase != PHASE_AWAITING_PICK:
                raise ApiError(409, f"pick not allowed in phase {session.phase}")
            if session.variant is GameVariant.GAME_I:
                session.host_opened = host_choose(
                    session.hidden_car, session.bias, session.host_draw
                )
                session.phase = PHASE_AWAITING_DECISION
            else:
                session.phase = PHASE_AWAITING_COMMIT
        return session

    def submit_decision(self, session_id: str, decision: Decision) -> Session:
        session = self.get_session(session_id)
        with session.lock:
            expected_phase = (
                PHASE_AWAITING_DECISION
                if session.variant is GameVariant.GAME_I
                else PHASE_AWAITING_COMMIT
            )
            if session.phase != expected_phase:
                raise ApiError(409, f"decision not allowed in phase {session.phase}")
            transcript = play(
                session.variant,
                session.hidden_car,
                session.bias,
                decision,
                session.host_draw,
            )
            session.decision = decision
            session.host_opened = transcript.host_opened
            session.outcome = transcript.outcome
            session.phase = PHASE_RESOLVED
            session.resolved_at = _now()
        self._record(session)
        self._log(session, transcript)
        return session

    # -- aggregates

    def _record(self, session: Session) -> None:
        key = (session.variant, session.bias, session.decision)
        with self._state_lock:
            bucket = self.stats.setdefault(key, _BucketCounts())
            bucket.games += 1
            won = session.outcome is Outcome.WIN
            bucket.wins += won
            if session.variant is GameVariant.GAME_I:
                tally = bucket.by_opened[session.host_opened]
                tally[0] += won
                tally[1] += 1

    def _log(self, session: Session, transcript) -> None:
        if self._log_path is None:
            return
        line = serialize.transcript_json(transcript)
        line["session_id"] = session.id
        line["created_at"] = session.created_at
        line["resolved_at"] = session.resolved_at
        import json

        with self._log_lock, open(self._log_path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(line, sort_keys=True) + "\n")

    def _theory_rates(
        self, variant: GameVariant, bias: Fraction, decision: Decision
    ) -> tuple[Fraction, dict[BoxLabel, Fraction]]:
        game2 = game_two_win(decision)
        overall = game2.p_win_switch if decision is Decision.SWITCH else game2.p_win_stay
        by_door = {}
        for door in (BoxLabel.L, BoxLabel.R):
            report = posterior_given_opened(bias, door)
            by_door[door] = (
                report.p_switch_win if decision is Decision.SWITCH else report.p_stay_win
            )
        return overall, by_door

    def _bucket_json(
        self, variant: GameVariant, bias: Fraction, decision: Decision, bucket: _BucketCounts
    ) -> dict[str, Any]:
        overall_theory, door_theory = self._theory_rates(variant, bias, decision)
        entry: dict[str, Any] = {
            "variant": variant.value,
            "q": serialize.rational_json(bias),
            "decision": decision.value,
            "games": bucket.games,
            "wins": bucket.wins,
            "empirical_rate": bucket.wins / bucket.games if bucket.games else None,
            "ci95": list(wilson_interval(bucket.wins, bucket.games)) if bucket.games else None,
            "theory_rate": serialize.rational_json(overall_theory),
        }
        if variant is GameVariant.GAME_I:
            entry["by_opened"] = {}
            for door in (BoxLabel.L, BoxLabel.R):
                wins, games = bucket.by_opened[door]
                entry["by_opened"][door.value] = {
                    "games": games,
                    "wins": wins,
                    "empirical_rate": wins / games if games else None,
                    "ci95": list(wilson_interval(wins, games)) if games else None,
                    "theory_rate": serialize.rational_json(door_theory[door]),
                }
        return entry

    def stats_snapshot(
        self, variant: GameVariant | None, bias: Fraction | None
    ) -> list[dict[str, Any]]:
        with self._state_lock:
            keys = set(self.stats.keys())
        # A fully specified empty bucket still reports its theory columns.
        if variant is not None and bias is not None:
            for decision in Decision:
                keys.add((variant, bias, decision))
        entries = []
        for key_variant, key_bias, key_decision in sorted(
            keys, key=lambda k: (k[0].value, k[1], k[2].value)
        ):
            if variant is not None and key_variant is not variant:
                continue
            if bias is not None and key_bias != bias:
                continue
            bucket = self.stats.get((key_variant, key_bias, key_decision), _BucketCounts())
            entries.append(self._bucket_json(key_variant, key_bias, key_decision, bucket))
        return entries


class CreateSessionBody(BaseModel):
    variant: str
    q: str | float | int | None = None


class DecisionBody(BaseModel):
    decision: str


def create_app(
    default_bias: Fraction = Fraction(1, 2),
    cors_origins: list[str] | tuple[str, ...] = ("*",),
    transcript_log: str | None = None,
    rng_seed: int | None = None,
) -> FastAPI:
    server = GameServer(
        default_bias=default_bias, transcript_log=transcript_log, rng_seed=rng_seed
    )
    app = FastAPI(title="montyhall session service")
    app.state.server = server
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.status, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"code": 400, "message": str(exc)})

    def parse_inputs(body: CreateSessionBody) -> tuple[GameVariant, Fraction]:
        try:
            variant = serialize.parse_variant(body.variant)
            bias = (
                server.default_bias if body.q is None else serialize.parse_bias(body.q)
            )
        except ValueError as err:
            raise ApiError(400, str(err)) from err
        return variant, bias

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        variant, bias = parse_inputs(body)
        return server.create_session(variant, bias).public_view()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return server.get_session(session_id).public_view()

    @app.post("/sessions/{session_id}/pick")
    def submit_pick(session_id: str):
        return server.submit_pick(session_id).public_view()

    @app.post("/sessions/{session_id}/decision")
    def submit_decision(session_id: str, body: DecisionBody):
        try:
            decision = serialize.parse_decision(body.decision)
        except ValueError as err:
            raise ApiError(400, str(err)) from err
        return server.submit_decision(session_id, decision).public_view()

    @app.get("/stats")
    def get_stats(variant: str | None = None, q: str | None = None):
        try:
            parsed_variant = None if variant in (None, "") else serialize.parse_variant(variant)
            parsed_bias = None if q in (None, "") else serialize.parse_bias(q)
        except ValueError as err:
            raise ApiError(400, str(err)) from err
        return {"buckets": server.stats_snapshot(parsed_variant, parsed_bias)}

    return app
