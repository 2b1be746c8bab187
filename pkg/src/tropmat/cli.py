"""Command-line front end.

Every verb reads JSON inputs, computes, and writes one JSON document (or a
plain-text table) with sorted keys and rationals as ``"p/q"`` strings, so
identical inputs and seeds give byte-identical output.

Exit codes: 0 on success, 2 for invalid input, 3 when the computation has no
answer (no balanced weighting, no generic displacement).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .chow import ChowRing, class_from_json, curve_class_lattice, format_rational
from .cycles import (TropicalCycle, balancing_defects, degree0, point_cycle, stable_intersect)
from .errors import ComputationFailure, ValidationError
from .fan import Fan, bergman_fan
from .matroid import Matroid, from_json as matroid_from_json
from .moduli import DiscreteData, moduli_complex
from .virtual import reconstruct_count, solve_virtual_weight

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILURE = 3


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc


def _need(args, name: str):
    value = getattr(args, name)
    if value is None or value == []:
        raise ValidationError(f"--{name.replace('_', '-')} is required for {args.verb}")
    return value


def _matroid(args) -> Matroid:
    return matroid_from_json(_load(_need(args, "matroid")))


def _gamma(args, n: Optional[int]) -> DiscreteData:
    return DiscreteData.from_json(_load(_need(args, "gamma")), n=n)


def _cycles(args) -> List[TropicalCycle]:
    return [TropicalCycle.from_json(_load(p)) for p in _need(args, "cycle")]


# -- verbs ----------------------------------------------------------------------------


def cmd_bergman(args):
    fan = bergman_fan(_matroid(args))
    out = fan.to_json()
    out["f_vector"] = fan.f_vector()
    rows = [("rays", len(out["rays"])), ("maximal cones", len(out["cones"])),
            ("f-vector", " ".join(map(str, out["f_vector"])))]
    return out, rows


def cmd_chow(args):
    ring = ChowRing(_matroid(args))
    dims = ring.dims()
    basis = {str(k): [{"chain": ring.flat_sets(chain), "exponents": list(exps)}
                      for chain, exps in ring.fy_basis(k)] for k in range(len(dims))}
    out = {"dims": dims, "basis": basis}
    return out, [(f"A^{k}", d) for k, d in enumerate(dims)]


def cmd_chow_degree(args):
    ring = ChowRing(_matroid(args))
    cls = class_from_json(ring, _load(_need(args, "chow_class")))
    deg = ring.degree(cls)
    return {"degree": format_rational(deg), "grade": cls.grade}, [("degree", format_rational(deg))]


def cmd_curve_lattice(args):
    flats, basis = curve_class_lattice(_matroid(args))
    out = {"flats": [sorted(f) for f in flats], "basis": [list(b) for b in basis],
           "rank": len(basis)}
    return out, [("rank", len(basis)), ("flats", len(flats))]


def cmd_trop_moduli(args):
    if args.fan and args.matroid:
        raise ValidationError("give either --matroid or --fan as the target, not both")
    if args.fan:
        target = Fan.from_json(_load(args.fan))
        gamma = _gamma(args, target.ambient_dim)
    else:
        target = _matroid(args) if args.matroid else None
        gamma = _gamma(args, target.n if target is not None else None)
    mc = moduli_complex(gamma, target, max_r=args.max_r, max_n=args.max_n)
    tops = {c.cone for c in mc.maximal_cones()}
    cones = []
    for c in mc.cones:
        entry = c.cone.to_json()
        entry["dim"] = c.dim
        entry["maximal"] = c.cone in tops
        entry["type"] = c.type.describe(mc.target)
        cones.append(entry)
    counts: Dict[int, int] = {}
    for c in mc.cones:
        counts[c.dim] = counts.get(c.dim, 0) + 1
    f_vector = [counts.get(k, 0) for k in range(mc.dim + 1)]
    out = {"ambient_dim": mc.ambient.dim, "dim": mc.dim, "gamma": gamma.to_json(),
           "f_vector": f_vector, "cones": cones}
    rows = [("ambient dim", mc.ambient.dim), ("dim", mc.dim),
            ("f-vector", " ".join(map(str, f_vector))),
            ("maximal", " ".join(f"{k}:{sum(1 for c in mc.cones if c.cone in tops and c.dim == k)}"
                                 for k in range(mc.dim + 1)))]
    return out, rows


def cmd_balance_check(args):
    out = []
    rows = []
    for path, z in zip(args.cycle or [], _cycles(args)):
        defects = balancing_defects(z)
        report = {"balanced": not defects, "dim": z.dim,
                  "defects": [{"face": tau.to_json(), "defect": [format_rational(x) for x in d]}
                              for tau, d in sorted(defects.items())]}
        out.append(report)
        rows.append((path, "balanced" if not defects else f"unbalanced at {len(defects)} faces"))
    return (out[0] if len(out) == 1 else out), rows


def cmd_intersect(args):
    zs = _cycles(args)
    if len(zs) < 2:
        raise ValidationError("intersect needs at least two --cycle inputs")
    acc = zs[0]
    for z in zs[1:]:
        acc = stable_intersect(acc, z, seed=args.seed)
    out = acc.to_json()
    rows = [("dim", acc.dim), ("cones", len(acc.weights))]
    if acc.dim == 0:
        out["degree"] = format_rational(degree0(acc))
        rows.append(("degree", out["degree"]))
    return out, rows


def cmd_degree(args):
    zs = _cycles(args)
    if len(zs) != 1:
        raise ValidationError("degree takes exactly one --cycle")
    deg = degree0(zs[0])
    return {"degree": format_rational(deg)}, [("degree", format_rational(deg))]


def _virtual(args):
    m = _matroid(args)
    gamma = _gamma(args, m.n)
    return solve_virtual_weight(m, gamma, int(_need(args, "c1beta")),
                                max_r=args.max_r, max_n=args.max_n)


def cmd_virtual_weight(args):
    vw = _virtual(args)
    out = vw.to_json()
    rows = [("dim", vw.dim), ("support cones", len(vw.support)),
            ("solution dim", vw.solution_dim), ("balanced", vw.is_balanced()),
            ("weights", " ".join(sorted({format_rational(x) for x in vw.cycle.weights.values()})))]
    return out, rows


def _constraints(data, n: int):
    if not isinstance(data, list):
        raise ValidationError("constraints must be a list of {leg, cycle}")
    out = []
    for entry in data:
        if not isinstance(entry, dict) or "leg" not in entry:
            raise ValidationError("each constraint needs a 'leg'")
        cyc = entry.get("cycle", "point")
        z = point_cycle(n) if cyc == "point" else TropicalCycle.from_json(cyc)
        out.append((int(entry["leg"]), z))
    return out


def cmd_reconstruct(args):
    vw = _virtual(args)
    cons = _constraints(_load(_need(args, "constraints")), vw.gamma.n)
    count = reconstruct_count(vw, cons, seed=args.seed)
    return {"count": format_rational(count), "seed": args.seed}, [("count", format_rational(count))]


VERBS: Dict[str, Callable] = {
    "bergman": cmd_bergman,
    "chow": cmd_chow,
    "chow-degree": cmd_chow_degree,
    "curve-lattice": cmd_curve_lattice,
    "trop-moduli": cmd_trop_moduli,
    "balance-check": cmd_balance_check,
    "intersect": cmd_intersect,
    "degree": cmd_degree,
    "virtual-weight": cmd_virtual_weight,
    "reconstruct": cmd_reconstruct,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropmat", description="Exact matroid and tropical moduli computations.")
    p.add_argument("--version", action="version", version=f"tropmat {__version__}")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--matroid", help="matroid JSON file")
    p.add_argument("--gamma", help="discrete data JSON file")
    p.add_argument("--cycle", action="append", help="cycle JSON file (repeatable)")
    p.add_argument("--fan", help="fan JSON file used as the target of trop-moduli")
    p.add_argument("--chow-class", dest="chow_class", help="Chow class JSON file")
    p.add_argument("--constraints", help="reconstruction constraints JSON file")
    p.add_argument("--c1beta", type=int, help="degree of c_1 against the curve class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-r", dest="max_r", type=int, default=8)
    p.add_argument("--max-n", dest="max_n", type=int, default=3)
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="json")
    return p


def _render(out, rows, fmt: str) -> str:
    if fmt == "table":
        width = max((len(str(k)) for k, _ in rows), default=0)
        return "".join(f"{str(k):<{width}}  {v}\n" for k, v in rows)
    return json.dumps(out, sort_keys=True, indent=2) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.fan and args.verb != "trop-moduli":
            raise ValidationError("--fan only applies to trop-moduli")
        out, rows = VERBS[args.verb](args)
    except ValidationError as exc:
        _diagnose("invalid input", exc)
        return EXIT_INVALID
    except ComputationFailure as exc:
        _diagnose("computation failed", exc)
        return EXIT_FAILURE
    except (KeyError, TypeError, ValueError) as exc:
        _diagnose("invalid input", exc)
        return EXIT_INVALID
    text = _render(out, rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _diagnose(kind: str, exc: Exception):
    msg = {"error": type(exc).__name__, "kind": kind, "message": str(exc)}
    sys.stderr.write(json.dumps(msg, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
