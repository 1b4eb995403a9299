"""Minimal JSON session service: game play and construction runs over HTTP.

Sessions live in an in-memory map; each session's mutations are serialized
by a per-session lock.  All numbers cross the wire in canonical text forms;
an optional append-only JSON-lines log records every mutation.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .constructors import (
    CauchyReal,
    audit_certificate,
    baire_point,
    cantor1874,
    cantor_oracle,
    complement_of_point,
    diagonal,
    perfect_escape,
    trisect,
    unit_interval_oracle,
    verify_certificate,
    wenner_escape,
)
from .core import closed, format_rational, open_iv, parse_interval, parse_rational
from .enumerations import Enumeration
from .errors import EngineError, ParseError
from .games import (
    GameKind,
    GameStatus,
    alice_move,
    alice_policy,
    bob_move,
    game_result,
    new_game,
    round_certificate,
    run_game,
)
from .wire import (
    approx,
    certificate_from_json,
    certificate_to_json,
    enumeration_from_json,
    enumeration_to_json,
    format_point,
    interval_to_json,
    result_from_json,
    result_to_json,
)


@dataclass
class _Session:
    id: str
    payload: dict
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Id-keyed sessions with deterministic ids and an optional event log."""

    def __init__(self, persist: Optional[str] = None):
        self._games: Dict[str, _Session] = {}
        self._constructs: Dict[str, _Session] = {}
        self._counter = 0
        self._lock = threading.Lock()
        self._persist = persist or os.environ.get("DIAGONAL_FORGE_PERSIST")

    def new_id(self, prefix: str) -> str:
        with self._lock:
            self._counter += 1
            return "%s%d" % (prefix, self._counter)

    def log(self, event: dict):
        if not self._persist:
            return
        with self._lock:
            with open(self._persist, "a") as fh:
                fh.write(json.dumps(event, sort_keys=True) + "\n")

    def games(self):
        return self._games

    def constructs(self):
        return self._constructs


def _error_response(exc: EngineError, status: int = 400) -> JSONResponse:
    body = {"code": exc.code, "message": str(exc)}
    witness = getattr(exc, "witness", None)
    if witness is not None:
        body["witness"] = (
            format_point(witness) if not isinstance(witness, str) else witness
        )
    for extra in ("line", "link", "position", "index", "pair"):
        value = getattr(exc, extra, None)
        if value is not None:
            body[extra] = value
    return JSONResponse(status_code=status, content=body)


def _not_found(sid: str) -> JSONResponse:
    return JSONResponse(
        status_code=404,
        content={"code": "not-found", "message": "unknown session %r" % sid},
    )


def _game_state_json(sid: str, g, enum_payload: dict) -> dict:
    state = {
        "id": sid,
        "kind": g.kind.value,
        "status": g.status.value,
        "round": g.round,
        "bob": g.bob_mode,
        "enum": enum_payload,
        "moves": [[who, value] for who, value in g.moves],
    }
    if g.kind is GameKind.INTERVAL:
        state["history"] = {
            "a": [format_rational(x) for x in g.a],
            "b": [format_rational(x) for x in g.b],
            "approx_a": [approx(x) for x in g.a],
            "approx_b": [approx(x) for x in g.b],
        }
        if g.status is GameStatus.AWAITING_ALICE:
            state["allowed"] = interval_to_json(g.allowed_alice())
        elif g.status is GameStatus.AWAITING_BOB:
            state["allowed"] = interval_to_json(g.allowed_bob())
    else:
        shown = []
        for k in range(1, len(g.z_digits) + 1):
            cap = g.target.capacity
            shown.append(
                g.target.stream(k).digit(k) if cap is None or k <= cap else None
            )
        state["history"] = {
            "a_digits": list(g.a_digits),
            "b_digits": list(g.b_digits),
            "z_digits": list(g.z_digits),
            "diagonal": shown,
        }
    completed = len(g.b) if g.kind is GameKind.INTERVAL else len(g.z_digits)
    if completed:
        cert = round_certificate(g)
        state["certificate"] = certificate_to_json(cert)
        state["result"] = result_to_json(game_result(g))
    return state


def _parse_alice(spec: str):
    if spec == "human":
        return None
    if spec == "midpoint":
        return alice_policy("midpoint")
    if spec.startswith("random:"):
        return alice_policy("random", seed=int(spec.split(":", 1)[1]))
    if spec.startswith("greedy:"):
        return alice_policy("greedy", target=parse_rational(spec.split(":", 1)[1]))
    raise ParseError("unknown alice policy %r" % spec)


def run_construction(body: dict):
    """Shared by the service and the CLI: dispatch one construction run."""
    method = body.get("method")
    depth = int(body.get("depth", 8))
    if method == "wenner":
        reals = [
            CauchyReal([parse_rational(t) for t in terms])
            for terms in body.get("reals", [])
        ]
        result, cert = wenner_escape(reals, depth)
        return result, cert, reals
    e = enumeration_from_json(_enum_payload(body))
    if method == "cantor1874":
        bounds = parse_interval(body.get("bounds", "[0,1]"))
        result, cert = cantor1874(e, bounds, depth)
    elif method == "trisect":
        result, cert = trisect(e, depth)
    elif method == "diagonal":
        result, cert = diagonal(e, int(body.get("base", 10)), depth)
    elif method == "perfect":
        oracle = (
            cantor_oracle()
            if body.get("oracle") == "cantor_middle_thirds"
            else unit_interval_oracle()
        )
        result, cert = perfect_escape(oracle, e, depth)
    elif method == "baire":
        G = [complement_of_point(e.value(k)) for k in range(1, depth + 1)]
        result, cert = baire_point(G, open_iv(0, 1), depth)
    else:
        raise ParseError("unknown method %r" % method)
    return result, cert, e


def _enum_payload(body: dict) -> dict:
    enum = body.get("enum")
    if isinstance(enum, str):
        return {"kind": enum}
    if isinstance(enum, dict):
        return enum
    raise ParseError("missing enumeration")


def create_app(persist: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="diagonal-forge", docs_url=None, redoc_url=None)
    store = SessionStore(persist)
    app.state.store = store

    @app.exception_handler(EngineError)
    async def _engine_error(request: Request, exc: EngineError):
        return _error_response(exc)

    async def _json_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise ParseError("request body is not valid JSON")
        if not isinstance(body, dict):
            raise ParseError("request body must be a JSON object")
        return body

    @app.post("/games")
    async def create_game(request: Request):
        body = await _json_body(request)
        try:
            kind = GameKind(body.get("kind", "interval"))
        except ValueError:
            raise ParseError("unknown game kind %r" % body.get("kind"))
        enum_payload = _enum_payload(body)
        e = enumeration_from_json(enum_payload)
        g = new_game(kind, e, bob=body.get("bob", "strategy"))
        policy = _parse_alice(body.get("alice", "human"))
        rounds = body.get("rounds")
        if policy is not None and rounds:
            run_game(g, int(rounds), policy)
        sid = store.new_id("g")
        session = _Session(sid, {"game": g, "enum": enum_payload})
        store.games()[sid] = session
        store.log({"event": "create", "session": sid, "body": body})
        return _game_state_json(sid, g, enum_payload)

    @app.get("/games/{sid}")
    async def get_game(sid: str):
        session = store.games().get(sid)
        if session is None:
            return _not_found(sid)
        with session.lock:
            return _game_state_json(
                sid, session.payload["game"], session.payload["enum"]
            )

    @app.post("/games/{sid}/moves")
    async def post_move(sid: str, request: Request):
        session = store.games().get(sid)
        if session is None:
            return _not_found(sid)
        body = await _json_body(request)
        role = body.get("role")
        value = body.get("value")
        with session.lock:
            g = session.payload["game"]
            if role == "alice":
                alice_move(g, _move_value(g, value))
                if g.bob_mode == "strategy":
                    bob_move(g)
            elif role == "bob":
                bob_move(g, _move_value(g, value) if value is not None else None)
            else:
                raise ParseError("role must be 'alice' or 'bob'")
            store.log({"event": "move", "session": sid, "body": body})
            return _game_state_json(sid, g, session.payload["enum"])

    @app.post("/construct")
    async def construct(request: Request):
        body = await _json_body(request)
        result, cert, adversary = run_construction(body)
        sid = store.new_id("c")
        store.constructs()[sid] = _Session(
            sid, {"result": result, "cert": cert, "adversary": adversary},
        )
        store.log({"event": "construct", "session": sid, "body": body})
        verified = verify_certificate(result, cert, adversary)
        out = {
            "id": sid,
            "method": body.get("method"),
            "result": result_to_json(result),
            "certificate": certificate_to_json(cert),
            "verified": verified,
        }
        if cert.enclosure is not None:
            out["enclosure"] = interval_to_json(cert.enclosure)
            mid = cert.enclosure.midpoint()
            out["eta"] = {"value": format_rational(mid), "approx": approx(mid)}
        return out

    @app.get("/construct/{sid}/verify")
    async def construct_verify(sid: str):
        session = store.constructs().get(sid)
        if session is None:
            return _not_found(sid)
        p = session.payload
        report = audit_certificate(p["result"], p["cert"], p["adversary"])
        out = {"ok": report.ok}
        if report.failure:
            out["failure"] = report.failure
        return out

    @app.post("/verify")
    async def verify_inline(request: Request):
        body = await _json_body(request)
        if "result" not in body or "certificate" not in body:
            raise ParseError("verify payload needs 'result' and 'certificate'")
        result = result_from_json(body["result"])
        cert = certificate_from_json(body["certificate"])
        adversary = None
        if "enum" in body:
            adversary = enumeration_from_json(_enum_payload(body))
        elif "reals" in body:
            adversary = [
                CauchyReal([parse_rational(t) for t in terms])
                for terms in body["reals"]
            ]
        depth = body.get("depth")
        report = audit_certificate(
            result, cert, adversary, int(depth) if depth else None
        )
        out = {"ok": report.ok}
        if report.failure:
            out["failure"] = report.failure
        return out

    return app


def _move_value(g, value):
    if g.kind is GameKind.INTERVAL:
        return parse_rational(str(value))
    return int(value)


def serve(port: int, persist: Optional[str] = None):  # pragma: no cover
    import uvicorn

    uvicorn.run(create_app(persist), host="127.0.0.1", port=port)
