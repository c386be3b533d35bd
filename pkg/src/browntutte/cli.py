"""Command-line front end.

Usage::

    browntutte seq --M 0 --count 7
    browntutte weight --M 0,1 --x 0.5,1,2 --normalized
    browntutte verify --M 0..4 --n-max 12 --z 2R --tol 1e-8 --format json
    browntutte positivity --M 0..6
    browntutte plot-data --M 2,3,4 --points 500 --normalized --out fig2.csv
    browntutte spec --M 2

Exit status: 0 on success, 1 if any verification report failed, 2 on a usage
error.  CSV output uses LF line endings and shortest round-trip floats.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import SUPPORT_RADIUS, brown_tutte_row
from .errors import BrownTutteError
from .meijer import (
    MeijerGSpec,
    WeightRepresentation,
    ogf_spec,
    reshuffle_ogf_to_weight,
    weight_representation,
    weight_spec,
)
from .positivity import convolution_certificate
from .verification import DEFAULT_TOL, verify_suite
from .weight import EDGE_EPS, R, weight

__all__ = ["main", "run", "emit_plot_data", "emit_spec", "spec_document", "load_spec_document"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# flag parsing


def parse_M(text: str) -> list[int]:
    """``"3"``, ``"0..4"`` (inclusive) or ``"0,2,5"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad M value {text!r}; use an int, a range like 0..4, or a list like 0,1,2")
    if not out:
        raise argparse.ArgumentTypeError(f"empty M range {text!r}")
    if min(out) < 0:
        raise argparse.ArgumentTypeError(f"M must be >= 0, got {text!r}")
    return out


def parse_z(text: str) -> list[Fraction]:
    """Comma list of ``<rational>R`` (exact multiples of R = 256/27) or plain reals."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            if tok.endswith("R"):
                head = tok[:-1].rstrip("*")
                out.append((Fraction(head) if head else Fraction(1)) * SUPPORT_RADIUS)
            else:
                out.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad z value {tok!r}; use e.g. 2R, 1.5R, 3/2R or 20.0")
    return out


def parse_reals(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad real list {text!r}")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def _fmt(x) -> str:
    # repr is the shortest string that round-trips, at most 17 significant digits
    return repr(float(x))


# ---------------------------------------------------------------------------
# emitters


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror}") from exc


def plot_grid(points: int) -> np.ndarray:
    if points < 2:
        raise UsageError("--points must be >= 2")
    return np.linspace(EDGE_EPS * R, (1.0 - EDGE_EPS) * R, points)


def emit_plot_data(M_list, points: int = 500, normalized: bool = False, out: str | None = None) -> str:
    """CSV ``x,M,w`` on a uniform grid over (eps R, (1 - eps) R)."""
    xs = plot_grid(points)
    rows = []
    for M in M_list:
        ws = weight(M, xs, normalized=normalized)
        rows.extend((_fmt(x), M, _fmt(w)) for x, w in zip(xs, ws))
    text = _csv_text(("x", "M", "w"), rows)
    _write(text, out)
    return text


def spec_document(M: int) -> dict:
    """Weight and generating-function specs, Slater terms and the reshuffle map."""
    ws, gs = weight_spec(M), ogf_spec(M)
    reshuffled = reshuffle_ogf_to_weight(gs)
    return {
        "M": M,
        "weight_spec": ws.to_dict(),
        "ogf_spec": gs.to_dict(),
        "slater": weight_representation(M).to_dict(),
        "reshuffle": {
            "L1": [str(a) for a in ws.alpha[1:]],
            "L2": [str(b) for b in ws.beta],
            "moved": "0",
            "from": "alpha n-bracket of ogf_spec",
            "to": "alpha tail bracket of weight_spec",
            "result": reshuffled.to_dict(),
            "matches_weight_spec": reshuffled.same_structure(ws),
        },
    }


def load_spec_document(doc: dict) -> dict:
    """Inverse of :func:`spec_document`: rebuild the structures from parsed JSON."""
    return {
        "M": int(doc["M"]),
        "weight_spec": MeijerGSpec.from_dict(doc["weight_spec"]),
        "ogf_spec": MeijerGSpec.from_dict(doc["ogf_spec"]),
        "slater": WeightRepresentation.from_dict(doc["slater"]),
        "reshuffle": MeijerGSpec.from_dict(doc["reshuffle"]["result"]),
    }


def emit_spec(M: int, out: str | None = None) -> str:
    text = _json_text(spec_document(M))
    _write(text, out)
    return text


# ---------------------------------------------------------------------------
# subcommands


def _single_M(args) -> int:
    if len(args.M) != 1:
        raise UsageError("this subcommand takes a single --M value")
    return args.M[0]


def cmd_seq(args) -> int:
    rows = [(M, brown_tutte_row(M, args.count)) for M in args.M]
    if args.format == "json":
        _write(_json_text([{"M": M, "values": vals} for M, vals in rows]), args.out)
    else:
        _write("".join(",".join(map(str, vals)) + "\n" for _, vals in rows), args.out)
    return 0


def cmd_weight(args) -> int:
    if not args.x:
        raise UsageError("weight needs --x")
    xs = np.asarray(args.x)
    rows = [(x, M, w) for M in args.M for x, w in zip(xs, weight(M, xs, normalized=args.normalized))]
    if args.format == "json":
        _write(_json_text([{"x": float(x), "M": M, "w": float(w)} for x, M, w in rows]), args.out)
    else:
        _write(_csv_text(("x", "M", "w"), [(_fmt(x), M, _fmt(w)) for x, M, w in rows]), args.out)
    return 0


_REPORT_FIELDS = ("name", "M", "parameter", "expected", "computed", "rel_error", "passed", "tolerance")


def cmd_verify(args) -> int:
    reports = verify_suite(args.M, args.n_max, args.z or (), args.tol, allow_large_n=args.allow_large_n)
    if args.format == "json":
        _write(_json_text([r.to_dict() for r in reports]), args.out)
    else:
        rows = [
            (r.name, r.M, _fmt(r.parameter), _fmt(r.expected), _fmt(r.computed), _fmt(r.rel_error),
             str(r.passed).lower(), _fmt(r.tolerance))
            for r in reports
        ]
        _write(_csv_text(_REPORT_FIELDS, rows), args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_positivity(args) -> int:
    reports = [convolution_certificate(M) for M in args.M]
    if args.format == "json":
        _write(_json_text([r.to_dict() for r in reports]), args.out)
    else:
        rows = []
        for r in reports:
            pairing = " ".join(f"{a}:{b}" for a, b in r.pairing)
            witness = "" if r.witness is None else f"{r.witness[0]}:{r.witness[1]}:{r.witness[2]}"
            rows.append((r.M, r.status, pairing, witness))
        _write(_csv_text(("M", "status", "pairing", "witness"), rows), args.out)
    return 0


def cmd_plot_data(args) -> int:
    emit_plot_data(args.M, args.points, args.normalized, args.out)
    return 0


def cmd_spec(args) -> int:
    emit_spec(_single_M(args), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--M", type=parse_M, default=[0], help="int, inclusive range a..b, or list a,b,c")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="browntutte", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("seq", parents=[common], help="exact moment sequences A(M, n)")
    p.add_argument("--count", type=_positive_int, default=10)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("weight", parents=[common], help="evaluate W_M at points of (0, R)")
    p.add_argument("--x", type=parse_reals, required=True)
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("verify", parents=[common], help="run the numerical verification suite")
    p.add_argument("--n-max", type=_positive_int, default=12)
    p.add_argument("--z", type=parse_z, default=None, help="Stieltjes points, e.g. 1.5R,2R,10R")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--allow-large-n", action="store_true", help="lift the n <= 20 cap")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("positivity", parents=[common], help="Mellin-convolution positivity certificate")
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("plot-data", parents=[common], help="CSV curves x,M,w for plotting")
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("spec", parents=[common], help="JSON dump of the Meijer-G parameter data")
    p.set_defaults(func=cmd_spec)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"browntutte {args.command}: error: {exc}", file=sys.stderr)
        print(f"hint: see 'browntutte {args.command} --help'", file=sys.stderr)
        return 2
    except (BrownTutteError, OSError) as exc:
        print(f"browntutte {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
