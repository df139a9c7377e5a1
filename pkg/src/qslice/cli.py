"""Command line interface.

Output is JSON lines with sorted keys and no timestamps, so runs are
byte-reproducible. Every inexact numeric quantity is reported as a pair
of rational bounds, never as a bare float.

Exit codes: 0 for a definite or certified answer, 2 for an honest
"could not decide", 1 for unusable input.

The only environment knob is QSLICE_WORKERS, an upper bound on worker
processes for batch enumeration. The current implementation is single
process, so any positive value is accepted and treated as a cap.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .algebraic import AlgebraicNumber, algebraic_from_poly, bonacci_root, refine
from .bonacci import (
    BonacciError,
    C2Outcome,
    CertificationFailed,
    c2_probe,
    null_infinite_probe,
    verify_odd_cardinality,
)
from .certificates import Certificate, to_json, verify
from .dimension import (
    DimensionError,
    affinity_dimension,
    box_dimension_estimate,
    build_r_tree,
    dimension_lower_bound,
    estimate_M,
)
from .dynamics import InvalidBase, OrbitNode, enumerate_orbits, ternary_branch_system
from .render import RenderError, RenderSpec, render_kq
from .slices import (
    ClaimKind,
    SliceInputError,
    compute_slice,
    geometric_slice_oracle,
    slice_matches_oracle,
)
from .thickness import (
    GapFamily,
    ThicknessError,
    enumerate_gaps,
    find_slice3_witness,
    newhouse_certify,
    thickness_lower_bound,
)
from .words import Tail, WordSyntaxError, format_word, parse_word

MAX_TREE_DEPTH = 512  # JSON nesting for orbit-tree is one level per step


class InputError(ValueError):
    pass


def parse_number(text: str) -> AlgebraicNumber:
    """Number literals: "3/2", "1.8", "bonacci:3", or
    "algebraic:c0,c1,...,cn:lo:hi" for the root of a polynomial given by
    ascending coefficients, isolated in [lo, hi]."""
    text = text.strip()
    try:
        if text.startswith("bonacci:"):
            return bonacci_root(int(text.split(":", 1)[1]))
        if text.startswith("algebraic:"):
            parts = text.split(":")
            if len(parts) != 4:
                raise InputError(f"bad algebraic literal: {text!r}")
            coeffs = [Fraction(c) for c in parts[1].split(",")]
            return algebraic_from_poly(coeffs, Fraction(parts[2]), Fraction(parts[3]))
        return AlgebraicNumber.from_rational(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"cannot parse number {text!r}: {e}")


def parse_height(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse height {text!r}: {e}")


def worker_count() -> int:
    raw = os.environ.get("QSLICE_WORKERS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"QSLICE_WORKERS must be an integer, got {raw!r}")
    if n < 1:
        raise InputError("QSLICE_WORKERS must be positive")
    return n


def _interval(x, eps: Fraction = Fraction(1, 10**18)) -> list[str]:
    """Rational bound pair for any exact or floating quantity."""
    if isinstance(x, float):
        # pad by one grid unit so the pair encloses the true value, not
        # just the float that approximates it
        grid = 10**15
        return [
            str(Fraction(math.floor(x * grid) - 1, grid)),
            str(Fraction(math.ceil(x * grid) + 1, grid)),
        ]
    if isinstance(x, AlgebraicNumber):
        lo, hi = x.refine_to(eps)
        return [str(lo), str(hi)]
    if isinstance(x, (int, Fraction)):
        return [str(Fraction(x)), str(Fraction(x))]
    lo, hi = refine(x, eps)
    return [str(lo), str(hi)]


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True, separators=(",", ":")))


def _claim_record(claim) -> dict:
    return {
        "type": claim.kind.value,
        "n": claim.n,
        "certified": claim.certified,
    }


def _cert_record(cert: Certificate) -> dict:
    return json.loads(to_json(cert))


def _expansion_point(sys_, y: Fraction):
    """Height in [0,1] scaled onto the expansion interval [0, 1/(q-1)]."""
    if not 0 <= y <= 1:
        raise InputError("height must lie in [0, 1]")
    return sys_.lift(y) / (sys_.q() - 1)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_slice(args) -> int:
    q = parse_number(args.q)
    y = parse_height(args.y)
    res = compute_slice(q, y, args.depth, max_cylinders=args.max_cylinders)
    rec = {
        "command": "slice",
        "q": _interval(q),
        "y": _interval(y),
        "depth": res.depth,
        "cylinders": [format_word(w) for w in res.cylinders],
        "claim": _claim_record(res.claim),
        "branch_events": len(res.branch_events),
        "truncated": res.truncated,
    }
    agree = True
    if args.oracle:
        boxes = geometric_slice_oracle(q, y, args.depth)
        agree = slice_matches_oracle(res, boxes)
        rec["oracle"] = {"boxes": len(boxes), "agrees": agree}
    _emit(rec)
    if not agree:
        return 2
    if res.claim.certified or res.claim.kind == ClaimKind.UncountablePattern:
        return 0
    return 2


def _node_record(node: OrbitNode) -> dict:
    return {
        "label": node.path[-1] if node.path else None,
        "point_interval": _interval(node.point),
        "children": [_node_record(c) for c in node.children if c.alive],
    }


def _cmd_orbit_tree(args) -> int:
    q = parse_number(args.q)
    y = parse_height(args.y)
    if args.depth > MAX_TREE_DEPTH:
        raise InputError(f"depth capped at {MAX_TREE_DEPTH} for tree output")
    sys_ = ternary_branch_system(q)
    x0 = _expansion_point(sys_, y)
    tree = enumerate_orbits(sys_, x0, args.depth)
    _emit(
        {
            "command": "orbit-tree",
            "q": _interval(q),
            "y": _interval(y),
            "depth": args.depth,
            "alive": tree.alive_leaf_count(),
            "dead_ends": tree.dead_end_count(),
        }
    )
    _emit(_node_record(tree.root))
    return 0


def _parse_set(text: str) -> tuple[GapFamily, Optional[int]]:
    t = text.strip().lower()
    if t == "aq":
        return GapFamily.AqSet, None
    if t.startswith("sk:"):
        return GapFamily.SkSet, int(t.split(":", 1)[1])
    if t.startswith("scaled-sk:"):
        return GapFamily.ScaledShiftedSk, int(t.split(":", 1)[1])
    raise InputError(
        f"unknown set {text!r}; expected aq, sk:<k>, or scaled-sk:<k>"
    )


def _cmd_thickness(args) -> int:
    q = parse_number(args.q)
    try:
        family, k = _parse_set(args.set)
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"bad set spec {args.set!r}: {e}")
    gs = enumerate_gaps(q, family, args.level, k=k if k is not None else 9)
    try:
        bound = _interval(thickness_lower_bound(gs))
    except ThicknessError:
        bound = None
    _emit(
        {
            "command": "thickness",
            "q": _interval(q),
            "set": args.set,
            "level": gs.level,
            "k": gs.k,
            "gap_count": len(gs.gaps),
            "hull": [_interval(gs.hull[0][0]), _interval(gs.hull[1][1])],
            "thickness_lower_bound": bound,
        }
    )
    for i, gap in enumerate(gs.gaps):
        _emit(
            {
                "command": "thickness",
                "index": i,
                "level": gap.level,
                "left": [_interval(gap.left[0])[0], _interval(gap.left[1])[1]],
                "right": [_interval(gap.right[0])[0], _interval(gap.right[1])[1]],
                "size": [_interval(gap.size[0])[0], _interval(gap.size[1])[1]],
                "bridge_lower_bound": _interval(gap.bridge_lb),
            }
        )
    return 0


def _cmd_certify_slice3(args) -> int:
    q = parse_number(args.q)
    cert = newhouse_certify(q, level=args.level)
    failures = verify(cert)
    height, res = find_slice3_witness(q, depth=args.depth)
    three = res.claim.kind == ClaimKind.ExactlyN and res.claim.n == 3
    _emit(
        {
            "command": "certify-slice3",
            "q": _interval(q),
            "witness_interval": list(height),
            "depth": res.depth,
            "claim": _claim_record(res.claim),
            "cylinders": [format_word(w) for w in res.cylinders],
            "intersection_verified": not failures,
            "failures": failures,
        }
    )
    _emit({"command": "certify-slice3", "certificate": _cert_record(cert)})
    # exactly-3 at this depth means each orbit was probed one full depth
    # beyond the enumeration without forking; that is the certified claim
    return 0 if three and not failures else 2


def _parse_delta(text: str) -> Tail:
    w = parse_word(text)
    if not isinstance(w, Tail):
        raise InputError(
            "delta must be eventually periodic: end it with a starred block"
        )
    return w


def _cmd_bonacci(args) -> int:
    if args.mode == "verify":
        delta = _parse_delta(args.delta)
        try:
            cert = verify_odd_cardinality(args.k, args.m, delta=delta, depth=args.depth)
        except CertificationFailed as e:
            _emit({"command": "bonacci", "mode": "verify", "error": str(e)})
            return 2
        _emit(
            {
                "command": "bonacci",
                "mode": "verify",
                "k": args.k,
                "m": args.m,
                "delta": format_word(delta),
                "count": cert.data["count"],
                "verified": not verify(cert),
            }
        )
        _emit({"command": "bonacci", "certificate": _cert_record(cert)})
        return 0
    if args.mode == "null":
        try:
            cert = null_infinite_probe(args.k, depth=args.depth or 30)
        except CertificationFailed as e:
            _emit({"command": "bonacci", "mode": "null", "error": str(e)})
            return 2
        _emit(
            {
                "command": "bonacci",
                "mode": "null",
                "k": args.k,
                "branches_at_depth": cert.data["branches-at-depth"],
                "verified": not verify(cert),
            }
        )
        _emit({"command": "bonacci", "certificate": _cert_record(cert)})
        return 0
    # c2
    if args.q is None:
        raise InputError("c2 mode needs --q")
    q = parse_number(args.q)
    report = c2_probe(q, depth=args.depth or 64)
    rec = {
        "command": "bonacci",
        "mode": "c2",
        "q": _interval(q),
        "outcome": report.outcome.value,
    }
    if report.branch_step is not None:
        rec["branch_step"] = report.branch_step
    if report.route is not None:
        rec["route"] = report.route
    _emit(rec)
    ok = True
    if report.certificate is not None:
        ok = not verify(report.certificate)
        _emit(
            {
                "command": "bonacci",
                "certificate": _cert_record(report.certificate),
                "verified": ok,
            }
        )
    if report.exhibited_pair is not None:
        a, b = report.exhibited_pair
        _emit(
            {
                "command": "bonacci",
                "pair": [format_word(a), format_word(b)],
            }
        )
    return 2 if report.outcome == C2Outcome.Unknown or not ok else 0


def _cmd_dimension(args) -> int:
    q = parse_number(args.q)
    y = parse_height(args.y)
    rec = {
        "command": "dimension",
        "q": _interval(q),
        "y": _interval(y),
        "method": args.method,
        "M": None,
        "s_lower": None,
        "box_estimate": None,
        "residual": None,
        "affinity_dimension": _interval(affinity_dimension(q)),
    }
    sys_ = ternary_branch_system(q)
    x0 = _expansion_point(sys_, y)
    if args.method == "mass":
        levels = args.levels if args.levels is not None else 6
        M = estimate_M(q, grid_resolution=args.grid, max_len=args.max_len)
        rec["M"] = M
        rec["s_lower"] = _interval(dimension_lower_bound(M))
        problems: list[str] = []
        if levels > 0:
            tree = build_r_tree(q, x0, levels, m_bound=M)
            problems = tree.validate()
            rec["tree"] = {
                "levels": levels,
                "leaves": len(tree.leaves()),
                "max_branch": tree.max_branch_length,
                "valid": not problems,
            }
        _emit(rec)
        return 0 if not problems else 2
    # box counting
    levels = args.levels if args.levels is not None else 9
    if levels < 2:
        raise InputError("box method needs at least two depths")
    depths = list(range(8, 8 + levels))
    counts = [
        enumerate_orbits(sys_, x0, d).alive_leaf_count() for d in depths
    ]
    slope, residual = box_dimension_estimate(counts, depths, with_residual=True)
    rec["box_counts"] = counts
    rec["box_estimate"] = _interval(slope)
    rec["residual"] = _interval(residual)
    _emit(rec)
    return 0


def _cmd_render(args) -> int:
    q = parse_number(args.q)
    markers = []
    for m in args.marker or []:
        xs, ys = m.split(",")
        markers.append((Fraction(xs), Fraction(ys)))
    bands = []
    for b in args.band or []:
        ls, hs = b.split(":")
        bands.append((Fraction(ls), Fraction(hs)))
    spec = RenderSpec(
        width=args.width,
        height=args.height,
        iterations=args.iterations,
        slice_height=Fraction(args.slice_height) if args.slice_height else None,
        markers=tuple(markers),
        bands=tuple(bands),
    )
    svg = render_kq(q, spec)
    if args.svg == "-":
        sys.stdout.write(svg)
        return 0
    with open(args.svg, "w") as f:
        f.write(svg)
    _emit({"command": "render", "svg": args.svg, "bytes": len(svg)})
    return 0


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; bad input should be 1
        raise InputError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="qslice", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("slice", help="enumerate the expansion orbits at a height")
    s.add_argument("--q", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--depth", type=int, default=48)
    s.add_argument("--max-cylinders", type=int, default=4096)
    s.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check against the geometric box oracle (exponential in depth)",
    )
    s.add_argument("--json", action="store_true", default=True, help="JSON output (default)")
    s.set_defaults(fn=_cmd_slice)

    s = sub.add_parser("orbit-tree", help="expand the branch tree at a height")
    s.add_argument("--q", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--depth", type=int, default=12)
    s.add_argument("--json", action="store_true", default=True)
    s.set_defaults(fn=_cmd_orbit_tree)

    s = sub.add_parser("thickness", help="enumerate the gaps of a fractal set family")
    s.add_argument("--q", required=True)
    s.add_argument("--set", required=True, help="aq, sk:<k>, or scaled-sk:<k>")
    s.add_argument("--level", type=int, default=40)
    s.add_argument("--json", action="store_true", default=True)
    s.set_defaults(fn=_cmd_thickness)

    s = sub.add_parser(
        "certify-slice3", help="locate and certify a three-orbit height"
    )
    s.add_argument("--q", required=True)
    s.add_argument("--depth", type=int, default=48)
    s.add_argument("--level", type=int, default=40)
    s.add_argument("--json", action="store_true", default=True)
    s.set_defaults(fn=_cmd_certify_slice3)

    s = sub.add_parser("bonacci", help="orbit counts at multinacci bases")
    s.add_argument("mode", choices=["verify", "null", "c2"])
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--delta", default="(01)*", help="tail pattern, e.g. \"(01)*\"")
    s.add_argument("--q")
    s.add_argument("--depth", type=int)
    s.add_argument("--json", action="store_true", default=True)
    s.set_defaults(fn=_cmd_bonacci)

    s = sub.add_parser("dimension", help="dimension bounds for slices")
    s.add_argument("--q", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--method", choices=["mass", "box"], default="mass")
    s.add_argument("--levels", type=int)
    s.add_argument("--grid", type=int, default=256)
    s.add_argument("--max-len", type=int, default=48)
    s.add_argument("--json", action="store_true", default=True)
    s.set_defaults(fn=_cmd_dimension)

    s = sub.add_parser("render", help="draw the carrier as SVG")
    s.add_argument("--q", required=True)
    s.add_argument("--iterations", type=int, default=7)
    s.add_argument("--svg", required=True, help="file path, or - for stdout")
    s.add_argument("--width", type=int, default=640)
    s.add_argument("--height", type=int, default=640)
    s.add_argument("--slice-height")
    s.add_argument("--marker", action="append", help="x,y (repeatable)")
    s.add_argument("--band", action="append", help="lo:hi (repeatable)")
    s.set_defaults(fn=_cmd_render)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        worker_count()
        args = parser.parse_args(argv)
        return args.fn(args)
    except InputError as e:
        _emit({"error": str(e)})
        return 1
    except (BonacciError, DimensionError, ThicknessError) as e:
        _emit({"error": str(e)})
        return 2
    except (SliceInputError, WordSyntaxError, InvalidBase, RenderError, ValueError) as e:
        _emit({"error": str(e)})
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
