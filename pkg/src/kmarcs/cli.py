"""Command-line interface: ``kmarcs {field,construct,analyze,equiv,census,trace-sys}``.

Every command prints one JSON report on stdout.  Exit codes: 0 ok,
2 usage or parameter error, 3 verification failure, 4 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import arcs, census, linsets, symmetry, tracesys
from .errors import KmArcError, TooLarge, VerificationFailure
from .gf2field import Field, FieldSpec, field_for, find_modulus
from .projgeom import normalize

log = logging.getLogger("kmarcs")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BOUNDS = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _hex(p):
    return [hex(x) for x in p] if p is not None else None


def _int(s: str) -> int:
    return int(s, 0)


def _threads(args) -> int:
    if args.threads:
        return args.threads
    env = os.environ.get("KMARC_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise UsageError(f"KMARC_THREADS must be an integer, got {env!r}")


def _field(args, m: int | None, **find_kw) -> Field:
    if args.modulus:
        spec = FieldSpec.from_modulus(int(args.modulus, 16))
        if m is not None and spec.m != m:
            raise UsageError(f"--modulus has degree {spec.m}, expected {m}")
        return field_for(spec)
    if m is None:
        raise UsageError("field degree is required")
    if find_kw:
        return field_for(find_modulus(m, **find_kw))
    return field_for(m)


def _element(F: Field, s: str) -> int:
    x = _int(s)
    if not 0 <= x < F.q:
        raise UsageError(f"{s} is not an element of GF({F.q})")
    return x


def _arc_summary(A: arcs.KMArc) -> dict:
    return {
        "t": A.t,
        "size": len(A.points),
        "nucleus": _hex(A.nucleus),
        "t_secants": [_hex(l) for l in A.t_secants],
        "spectrum": A.spectrum.to_json(),
    }


def _write(path: str, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# field


def cmd_field(args) -> tuple[Field, dict]:
    if args.modulus:
        F = _field(args, args.m)
    else:
        if args.m is None:
            raise UsageError("--m is required")
        F = field_for(find_modulus(args.m, primitive=args.primitive, vdd_compatible=args.vdd))
    s = F.spec
    return F, {
        "m": s.m,
        "modulus": hex(s.modulus),
        "primitive": s.primitive,
        "vdd_compatible": s.vdd_compatible,
        "trace_mask": hex(F.trace_mask),
    }


# construct


def _gw_input(F: Field, r: int, variant: str, j: int):
    if variant in ("in", "out") or j == 1:
        base = arcs.subplane_hyperoval(F, r)
        if variant == "in":
            return base, base[0], variant
        sub = F.subfield_elements(r)
        P = next(
            normalize(F, (x, y, 1))
            for x in sub
            for y in sub
            if normalize(F, (x, y, 1)) not in base
        )
        return base, P, variant
    small, embed = F.subfield(r)
    if j == r - 1:
        B = arcs.triad_trace(small)
    elif j == r - 2 and r >= 3:
        lam = small.lam
        B = arcs.new_family(arcs.FamilyParams(small, lam, small.mul(lam, lam), 0, 0))
    else:
        raise UsageError(f"recursive base of type 2^{j} is not available for r = {r}")
    base = [tuple(embed[x] for x in p) for p in B.points]
    return base, None, variant


def _club(args, F: Field) -> linsets.LinearSetWitness:
    kind = args.club
    if kind == "trace":
        return linsets.club_trace(F)
    if kind == "hminus2":
        return linsets.club_hminus2(F)
    if kind == "scattered":
        return linsets.club_scattered(F, args.n)
    if kind == "km":
        return linsets.club_km(F, args.i, args.n)
    if kind == "gw":
        return linsets.club_gw(F, args.r, args.t, args.n, _element(F, args.a), _element(F, args.b))
    raise UsageError(f"unknown club {kind}")


def cmd_construct(args) -> tuple[Field, dict]:
    fam = args.family
    if fam == "vdd":
        F = _field(args, args.h, primitive=True, vdd_compatible=True)
        A = arcs.vandendriessche(F, args.c)
    elif fam == "new":
        F = _field(args, args.h)
        p = arcs.FamilyParams(F, _element(F, args.alpha), _element(F, args.beta), args.a_bit, args.b_bit)
        A = arcs.new_family(p)
    elif fam == "km":
        F = _field(args, args.h)
        A = arcs.km_family(F, args.i, args.n)
    elif fam == "gw":
        F = _field(args, args.r * args.s)
        base, P, variant = _gw_input(F, args.r, args.variant, args.j)
        A = arcs.gw_cone(F, args.r, args.s, base, P, variant=variant)
    elif fam == "triad":
        F = _field(args, args.h)
        A = arcs.triad_trace(F)
    elif fam == "hyperoval":
        F = _field(args, args.h)
        A = arcs.translation_hyperoval(F, args.n)
    elif fam == "lift":
        F = _field(args, args.h)
        A = arcs.lift_club_to_arc(_club(args, F))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(fam)
    res = _arc_summary(A)
    js = arcs.arc_to_json(A)
    if args.out:
        _write(args.out, js)
        res["arc_file"] = args.out
    else:
        res["arc"] = js
    return F, res


# analyze


def _load_arc(path: str) -> arcs.KMArc:
    try:
        d = json.loads(Path(path).read_text())
        return arcs.arc_from_json(d)
    except VerificationFailure:
        raise
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read arc from {path}: {exc}") from exc


def cmd_analyze(args) -> tuple[Field, dict]:
    A = _load_arc(args.arc)
    F = A.field
    every = not (args.props or args.translation or args.club_check)
    res = _arc_summary(A)
    tl = None
    if every or args.translation or args.club_check:
        tl = symmetry.translation_lines(A)
        res["translation_lines"] = [_hex(l) for l in tl]
    if (every or args.props) and A.t > 2 and A.t == A.q // 4:
        res["properties"] = [symmetry.property_report(A, l).to_json() for l in A.t_secants]
    elif every or args.props:
        res["properties"] = None
    if (every or args.club_check) and tl:
        clubs = []
        for l in tl if A.t > 2 else tl[:1]:
            W = arcs.directions_club(A, l)
            clubs.append(
                {
                    "line": _hex(l),
                    "rank": W.rank,
                    "size": W.size,
                    "head": _hex(W.head),
                    "head_weight": W.head_weight,
                    "is_club": W.is_club,
                }
            )
        res["direction_clubs"] = clubs
    return F, res


def cmd_equiv(args) -> tuple[Field, dict]:
    A = _load_arc(args.a)
    B = _load_arc(args.b)
    g = symmetry.pgl_equivalent(A, B, semilinear=args.semilinear)
    res = {"equivalent": g is not None, "witness": symmetry.witness_to_json(g) if g else None}
    if args.out:
        _write(args.out, res["witness"])
    return A.field, res


# census


def cmd_census(args) -> tuple[Field | None, dict]:
    kind = args.kind
    if kind == "clubs":
        if args.q0 != 2:
            raise UsageError("the club census enumerates F2-linear sets (q0 = 2)")
        h = args.h or 3
        return field_for(h), census.census_clubs(h).to_json()
    if kind == "triads":
        q = args.q or 8
        return None, census.census_triads(q).to_json()
    if kind == "transliff":
        q = args.q or 16
        r = census.census_transliff(q, check_property_I=args.props, workers=_threads(args))
        return None, r.to_json()
    if kind == "equiv":
        q = args.q or 16
        return None, census.census_equiv(q, limit=args.limit).to_json()
    if kind == "stretch":
        return field_for(5), census.stretch_clubs_q32().to_json()
    raise UsageError(kind)  # pragma: no cover


def cmd_trace_sys(args) -> tuple[Field, dict]:
    F = _field(args, args.m)
    ks = [_element(F, k) for k in args.k]
    cs = [int(c) for c in args.c]
    if len(ks) != len(cs) or any(c not in (0, 1) for c in cs):
        raise UsageError("--k and --c must have equal length and --c must be bits")
    sys_ = tracesys.TraceSystem(F, tuple(ks), tuple(cs))
    rank, ok = tracesys.rank_and_consistency(sys_)
    res = {"rank": rank, "consistent": ok, "count": tracesys.count(sys_)}
    if args.solve:
        res["solutions"] = [hex(x) for x in tracesys.solve(sys_)]
    if args.brute:
        res["brute_count"] = tracesys.brute_count(sys_)
    return F, res


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modulus", help="field modulus in hex, overriding the canonical choice")
    common.add_argument("--threads", type=int, default=0, help="worker count (default: KMARC_THREADS or 1)")
    common.add_argument("--out", help="write the main JSON artifact to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="kmarcs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", parents=[common], help="show the field used for a given degree")
    f.add_argument("--m", type=int)
    f.add_argument("--primitive", action="store_true")
    f.add_argument("--vdd", action="store_true", help="require zero coefficients at degrees m-1, m-2")
    f.set_defaults(func=cmd_field)

    c = sub.add_parser("construct", parents=[common], help="build and verify a KM-arc")
    c.add_argument("family", choices=["new", "vdd", "km", "gw", "triad", "hyperoval", "lift"])
    c.add_argument("--h", type=int)
    c.add_argument("--alpha", default="0x2")
    c.add_argument("--beta", default="0x4")
    c.add_argument("--a", dest="a_bit", type=int, default=0)
    c.add_argument("--b", dest="b_bit", type=int, default=0)
    c.add_argument("--c", type=int, default=0)
    c.add_argument("--i", type=int, default=1)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--s", type=int, default=2)
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--j", type=int, default=1)
    c.add_argument("--variant", choices=["in", "out", "recursive"], default="in")
    c.add_argument("--club", choices=["trace", "km", "gw", "hminus2", "scattered"], default="hminus2")
    c.add_argument("--club-a", dest="a", default="0x0", help="gw club parameter a")
    c.add_argument("--club-b", dest="b", default="0x1", help="gw club parameter b")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", parents=[common], help="verify and analyze an arc JSON file")
    a.add_argument("arc")
    a.add_argument("--props", action="store_true")
    a.add_argument("--translation", action="store_true")
    a.add_argument("--club-check", action="store_true")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("equiv", parents=[common], help="search a collineation between two arcs")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--semilinear", action="store_true")
    e.set_defaults(func=cmd_equiv)

    n = sub.add_parser("census", parents=[common], help="exhaustive counts")
    n.add_argument("kind", choices=["clubs", "triads", "transliff", "equiv", "stretch"])
    n.add_argument("--q0", type=int, default=2)
    n.add_argument("--h", type=int)
    n.add_argument("--q", type=int)
    n.add_argument("--limit", type=int)
    n.add_argument("--props", action="store_true", help="also compare property (I) per secant")
    n.set_defaults(func=cmd_census)

    t = sub.add_parser("trace-sys", parents=[common], help="count or solve Tr(k_i x) = c_i")
    t.add_argument("--m", type=int)
    t.add_argument("--k", nargs="*", default=[])
    t.add_argument("--c", nargs="*", default=[])
    t.add_argument("--solve", action="store_true")
    t.add_argument("--brute", action="store_true")
    t.set_defaults(func=cmd_trace_sys)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        _threads(args)
        F, res = args.func(args)
    except VerificationFailure as exc:
        F, code = None, EXIT_VERIFY
        res = {"error": "verification", "message": str(exc), "line": _hex(exc.line), "size": exc.size}
    except TooLarge as exc:
        F, code = None, EXIT_BOUNDS
        res = {"error": "bounds", "message": str(exc)}
    except (UsageError, KmArcError, ValueError) as exc:
        F, code = None, EXIT_USAGE
        res = {"error": "usage", "message": str(exc)}
    report = {
        "command": argv,
        "field": F.spec.to_json() if F is not None else None,
        "results": res,
        "timing_s": round(time.perf_counter() - t0, 3),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
