"""Command-line entry point: constructions, covers, games, oracles, service."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .constructors import CauchyReal, audit_certificate
from .core import DigitStream, format_rational, parse_interval, parse_rational
from .covers import (
    Cover,
    cover_length_lower_bound,
    heine_borel_subcover,
    measure_zero_cover,
)
from .enumerations import load_file
from .errors import EngineError, ParseError
from .finite_cantor import (
    BinaryMatrix,
    FiniteSet,
    cantor_metric,
    diagonal_row,
    powerset_check,
)
from .games import (
    GameKind,
    alice_move,
    bob_move,
    game_result,
    new_game,
    round_certificate,
    run_game,
)
from .service import _parse_alice, run_construction
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

BUILTIN_KINDS = ("rationals_01", "dyadics_both_reps", "surds_bounded")


def _enum_arg(args) -> dict:
    if getattr(args, "file", None):
        return enumeration_to_json(load_file(args.file, base=getattr(args, "base", 10)))
    if getattr(args, "enum", None):
        return {"kind": args.enum}
    raise ParseError("need --enum KIND or --file PATH")


def _emit(data: dict, as_json: bool, lines):
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_construct(args) -> int:
    body = {"method": args.method, "depth": args.depth, "base": args.base}
    if args.bounds:
        body["bounds"] = args.bounds
    if args.oracle:
        body["oracle"] = args.oracle
    if args.method == "wenner":
        if not args.reals:
            raise ParseError("wenner needs --reals PATH (one sequence per line)")
        with open(args.reals) as fh:
            body["reals"] = [
                [t.strip() for t in line.split(",")]
                for line in fh
                if line.strip() and not line.startswith("#")
            ]
    else:
        body["enum"] = _enum_arg(args)
    result, cert, adversary = run_construction(body)
    report = audit_certificate(result, cert, adversary)
    run = {
        "method": args.method,
        "result": result_to_json(result),
        "certificate": certificate_to_json(cert),
        "verified": report.ok,
    }
    if args.method != "wenner":
        run["enum"] = body.get("enum")
    else:
        run["reals"] = body["reals"]
    lines = ["method: %s" % args.method, "verified: %s" % report.ok]
    if cert.enclosure is not None:
        mid = cert.enclosure.midpoint()
        run["eta"] = {"value": format_rational(mid), "approx": approx(mid)}
        lines.append("enclosure: %s" % cert.enclosure)
        lines.append("eta: %s (~%s)" % (format_rational(mid), approx(mid)))
    lines.append("rounds: %d" % len(cert.rounds))
    if cert.early_termination:
        lines.append("note: scan ended early (list exhausted or budget reached)")
    _emit(run, args.json, lines)
    return 0 if report.ok else 1


def _read_cover(args) -> Cover:
    target = parse_interval(args.target)
    pieces = []
    with open(args.file) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                pieces.append(parse_interval(line))
            except ParseError:
                raise ParseError("line %d: not an interval: %r" % (lineno, line),
                                 line=lineno)
    return Cover(target, pieces)


def _cmd_cover(args) -> int:
    if args.action == "epsilon":
        e = enumeration_from_json(_enum_arg(args))
        cover, ledger = measure_zero_cover(e, parse_rational(args.epsilon), args.count)
        data = {
            "pieces": [interval_to_json(p) for p in cover.pieces],
            "total": format_rational(ledger.total),
        }
        _emit(data, args.json, [
            "pieces: %d" % len(cover.pieces),
            "total length: %s (~%s)" % (format_rational(ledger.total),
                                        approx(ledger.total)),
        ])
        return 0
    cover = _read_cover(args)
    if args.action == "subcover":
        indices = heine_borel_subcover(cover)
        _emit({"indices": indices}, args.json,
              ["subcover indices: %s" % " ".join(map(str, indices))])
        return 0
    indices, bound = cover_length_lower_bound(cover)
    _emit(
        {"indices": indices, "bound": format_rational(bound)},
        args.json,
        ["chain indices: %s" % " ".join(map(str, indices)),
         "length bound: %s (~%s)" % (format_rational(bound), approx(bound))],
    )
    return 0


def _cmd_game(args) -> int:
    kind = GameKind(args.game_kind)
    e = enumeration_from_json(_enum_arg(args))
    g = new_game(kind, e, bob=args.bob)
    policy = _parse_alice(args.alice)
    if policy is None:
        _play_interactive(g, args.rounds)
    else:
        run_game(g, args.rounds, policy)
    cert = round_certificate(g)
    result = game_result(g)
    report = audit_certificate(result, cert, e)
    data = {
        "moves": [[who, value] for who, value in g.moves],
        "certificate": certificate_to_json(cert),
        "result": result_to_json(result),
        "verified": report.ok,
    }
    lines = ["rounds played: %d" % len(cert.rounds), "verified: %s" % report.ok]
    if kind is GameKind.INTERVAL:
        lines += ["a: %s" % " ".join(format_rational(x) for x in g.a),
                  "b: %s" % " ".join(format_rational(x) for x in g.b)]
    else:
        lines.append("z digits: %s" % "".join(map(str, g.z_digits)))
    _emit(data, args.json, lines)
    return 0 if report.ok else 1


def _play_interactive(g, rounds: int):  # pragma: no cover - needs a tty
    for _ in range(rounds):
        if g.kind is GameKind.INTERVAL:
            prompt = "alice a_%d in %s: " % (g.round, g.allowed_alice())
        else:
            prompt = "alice digit a_%d (0-9): " % g.round
        while True:
            try:
                raw = input(prompt)
                alice_move(g, parse_rational(raw) if g.kind is GameKind.INTERVAL
                           else int(raw))
                break
            except EngineError as exc:
                print("rejected: %s" % exc)
        if g.bob_mode == "strategy":
            bob_move(g)
            print("bob replies: %s" % g.moves[-1][1])
        else:
            while True:
                try:
                    raw = input("bob value: ")
                    bob_move(g, parse_rational(raw) if g.kind is GameKind.INTERVAL
                             else int(raw))
                    break
                except EngineError as exc:
                    print("rejected: %s" % exc)
    g.close()


def _cmd_enum(args) -> int:
    e = enumeration_from_json({"kind": args.kind} if args.kind in BUILTIN_KINDS
                              else {"kind": args.kind})
    rows = []
    for k in range(1, args.count + 1):
        v = e.value(k)
        rows.append({"index": k, "value": format_point(v), "approx": approx(v)})
    _emit({"kind": args.kind, "elements": rows}, args.json,
          ["%4d  %-24s ~%s" % (r["index"], r["value"], r["approx"]) for r in rows])
    return 0


def _cmd_oracle(args) -> int:
    if args.oracle_kind == "powerset":
        import itertools

        X = FiniteSet([chr(ord("a") + i) for i in range(args.size)])
        subsets = list(X.subsets())
        checked = 0
        for choice in itertools.product(subsets, repeat=len(X)):
            powerset_check(X, dict(zip(X.elements, choice)))
            checked += 1
        print("powerset check: %d functions over |X|=%d, all non-surjective"
              % (checked, args.size))
        return 0
    if args.oracle_kind == "diagonal":
        with open(args.matrix) as fh:
            rows = [[int(c) for c in line.split()] for line in fh if line.strip()]
        b = diagonal_row(BinaryMatrix(rows))
        print("diagonal row: %s" % " ".join(map(str, b)))
        return 0
    x = DigitStream(2, tuple(int(c) for c in args.x))
    y = DigitStream(2, tuple(int(c) for c in args.y))
    d = cantor_metric(x, y)
    print("d = %s" % format_rational(d))
    return 0


def _cmd_verify(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    result = result_from_json(data["result"])
    cert = certificate_from_json(data["certificate"])
    adversary = None
    if "enum" in data and data["enum"]:
        adversary = enumeration_from_json(data["enum"])
    elif "reals" in data:
        adversary = [CauchyReal([parse_rational(t) for t in terms])
                     for terms in data["reals"]]
    report = audit_certificate(result, cert, adversary, args.depth)
    if report.ok:
        print("certificate OK (%d/%d rounds)" % (len(cert.rounds), len(cert.rounds)))
        return 0
    print("certificate INVALID: %s" % report.failure)
    return 1


def _cmd_serve(args) -> int:  # pragma: no cover - long-running
    from .service import serve

    serve(args.port, args.persist)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagonal-forge",
        description="Exact-arithmetic constructions escaping enumerated reals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="run a certified construction")
    p.add_argument("--method", required=True,
                   choices=["cantor1874", "trisect", "diagonal", "perfect",
                            "baire", "wenner"])
    p.add_argument("--enum", choices=BUILTIN_KINDS)
    p.add_argument("--file")
    p.add_argument("--reals", help="wenner input file, one comma-separated row per sequence")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--bounds")
    p.add_argument("--oracle", choices=["unit_interval", "cantor_middle_thirds"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("cover", help="subcovers and measure-zero covers")
    p.add_argument("action", choices=["subcover", "lowerbound", "epsilon"])
    p.add_argument("--target", default="[0,1]")
    p.add_argument("--file")
    p.add_argument("--enum", choices=BUILTIN_KINDS)
    p.add_argument("--epsilon", default="1/2")
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("game", help="play or script the interval/diagonal games")
    p.add_argument("game_kind", choices=["interval", "diagonal"])
    p.add_argument("--enum", choices=BUILTIN_KINDS)
    p.add_argument("--file")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--alice", default="midpoint",
                   help="human | midpoint | random:SEED | greedy:TARGET")
    p.add_argument("--bob", default="strategy", choices=["strategy", "human"])
    p.add_argument("--rounds", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_game)

    p = sub.add_parser("enum", help="list enumeration prefixes")
    p.add_argument("kind", choices=BUILTIN_KINDS)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("oracle", help="finite brute-force oracles")
    p.add_argument("oracle_kind", choices=["powerset", "diagonal", "metric"])
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--matrix")
    p.add_argument("--x", default="0")
    p.add_argument("--y", default="1")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="audit a stored run")
    p.add_argument("--input", required=True)
    p.add_argument("--depth", type=int)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", help="run the JSON session service")
    p.add_argument("--port", type=int, default=8341)
    p.add_argument("--persist")
    p.set_defaults(func=_cmd_serve)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EngineError as exc:
        witness = getattr(exc, "witness", None)
        suffix = "" if witness is None else " (witness: %s)" % format_point(witness) \
            if not isinstance(witness, str) else " (witness: %s)" % witness
        print("error [%s]: %s%s" % (exc.code, exc, suffix), file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print("error [io]: %s" % exc, file=sys.stderr)
        return 1


def main():  # console-script entry
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
