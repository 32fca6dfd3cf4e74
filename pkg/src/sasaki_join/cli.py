"""Command-line interface: one JSON document per invocation on stdout.

Exit status 0 on success, 2 on invalid input, 3 when a computation fails.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from . import admissible, join as joinmod, quotient, topology
from .errors import ComputationError, ValidationError
from .exact import DEFAULT_WIDTH
from .join import FanoBase, WeightVector, make_join
from .quotient import ReebRay
from .serialize import Approx, CommandResult, dumps, table

PRECISION_ENV = "SASAKI_PRECISION"


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_base(text: str) -> FanoBase:
    """cpn:<r> | quadric | delpezzo:<k> | custom:<I_N>,<d_N>"""
    kind, _, arg = text.partition(":")
    try:
        if kind == "cpn":
            return FanoBase.projective_space(int(arg))
        if kind == "quadric" and not arg:
            return FanoBase.quadric_product()
        if kind == "delpezzo":
            return FanoBase.del_pezzo(int(arg))
        if kind == "custom":
            fano_index, d_N = (int(x) for x in arg.split(","))
            return FanoBase.custom(fano_index, d_N)
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise UsageError(f"bad base {text!r}") from None
    raise UsageError(f"bad base {text!r}; expected cpn:r, quadric, delpezzo:k or custom:I_N,d_N")


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def default_precision() -> Fraction:
    env = os.environ.get(PRECISION_ENV)
    if not env:
        return DEFAULT_WIDTH
    try:
        value = Fraction(env)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{PRECISION_ENV}={env!r} is not a rational number") from None
    if value <= 0:
        raise UsageError(f"{PRECISION_ENV} must be positive")
    return value


def _w(pair) -> WeightVector:
    return WeightVector(*pair)


def _v(pair) -> ReebRay:
    return ReebRay(*pair)


# -- handlers ---------------------------------------------------------------


def cmd_join(args):
    base = parse_base(args.base)
    j = make_join(base, _w(args.w))
    out = {"join": j, "K": j.K, "lens_fiber": j.lens}
    return {"base": args.base, "w": args.w}, out, ["relative Fano indices", "smoothness gcd condition"]


def cmd_regular_cones(args):
    base = parse_base(args.base)
    cones = joinmod.enumerate_regular_cones(base)
    return {"base": args.base}, {"cones": cones, "count": len(cones)}, ["regular cone enumeration over divisors K"]


def cmd_quotient(args):
    base = parse_base(args.base)
    j = make_join(base, _w(args.w))
    q = quotient.reeb_quotient(j, _v(args.v))
    out = {"join": j, "quotient": q, "signed_degree": q.signed_degree}
    return {"base": args.base, "w": args.w, "v": args.v}, out, ["quotient log pair by a quasi-regular Reeb flow"]


def cmd_periods(args):
    base = parse_base(args.base)
    j = make_join(base, _w(args.w))
    p = quotient.orbit_periods(j, _v(args.v))
    r1, r2 = p.ramification
    out = {"periods": p, "ratios": [r1, r2]}
    return {"base": args.base, "w": args.w, "v": args.v}, out, ["Reeb orbit periods, units of 2pi"]


def cmd_cohomology(args):
    w = _w(args.w)
    if args.family == "sphere":
        ring = topology.cohomology_sphere_join(args.r, w)
    elif args.family == "quadric":
        ring = topology.cohomology_quadric_join(w)
    else:
        ring = topology.cohomology_delpezzo_join(args.k, w)
    inputs = {"family": args.family, "w": args.w, "r": args.r, "k": args.k}
    return inputs, {"ring": ring, "poincare_duality": ring.poincare_duality_holds()}, ["join cohomology ring"]


def cmd_classes(args):
    ws = topology.partition_classes(args.W, args.r)
    out = {"weights": ws, "count": len(ws), "primes": len(topology.factorize(args.W))}
    if args.r == 2:
        out["classes"] = {label: v for label, v in topology.split_classes(args.W).items()}
    return {"W": args.W, "r": args.r}, out, ["coprime splittings of W", "H^4 order split by 3 | |w|"]


def cmd_homotopy(args):
    v = topology.homotopy_equivalent_7(_w(args.w), _w(args.wprime))
    out = {"verdict": v.verdict, "modulus": v.modulus, "residues": list(v.residues), "reason": v.reason}
    return {"w": args.w, "wprime": args.wprime}, out, ["l2 cubes in units mod l1^2 W up to sign"]


def cmd_p1(args):
    res, mod = topology.p1_residue(_w(args.w))
    return {"w": args.w}, {"residue": res, "modulus": mod}, ["first Pontrjagin class residue"]


def cmd_homeo(args):
    w, wp = _w(args.w), _w(args.wprime)
    ok = topology.homeo_obstruction(w, wp)
    a, b, mod = topology.homeo_residues(w, wp)
    out = {"congruence_holds": ok, "residues": [a, b], "modulus": mod, "certified_non_homeomorphic": not ok}
    return {"w": args.w, "wprime": args.wprime}, out, ["p1 homeomorphism invariance"]


def _ke_root(root):
    iv = root.interval
    item = {
        "interval": iv,
        "multiplicity": root.multiplicity,
        "rationality": root.rationality,
        "classification": root.classification,
        "estimate": Approx(float(iv.midpoint), float(iv.width / 2)),
    }
    if root.value is not None:
        item["value"] = root.value
        item["v"] = root.v
    if root.quotient is not None:
        item["quotient"] = root.quotient
        item["lambda"] = root.lam
    return item


def cmd_ke_solve(args):
    precision = args.precision if args.precision is not None else default_precision()
    sol = admissible.solve_ke_ray(_w(args.w), args.dn, precision, args.fano_index)
    out = {
        "t": sol.t,
        "defect_polynomial": sol.polynomial,
        "roots": [_ke_root(r) for r in sol.roots],
        "root_count": len(sol.roots),
    }
    inputs = {"w": args.w, "dn": args.dn, "precision": precision, "fano_index": args.fano_index}
    return inputs, out, ["KE defect integral in c", "Sturm root isolation in (t, oo)"]


def cmd_ke_defect(args):
    value = admissible.ke_defect(_w(args.w), _v(args.v), args.dn)
    return {"w": args.w, "v": args.v, "dn": args.dn}, {"defect": value, "einstein": value == 0}, ["KE defect integral"]


def cmd_family(args):
    fam = admissible.quasiregular_family(args.k, args.dn, args.fano_index)
    out = {"t": fam.t, "w": fam.w, "v": fam.v, "c": fam.k * fam.t, "l1": fam.l1, "l2": fam.l2, "defect": Fraction(0)}
    if args.fano_index is not None:
        q = quotient.reeb_quotient(make_join(FanoBase.custom(args.fano_index, args.dn), fam.w), fam.v)
        out["quotient"] = q
    return {"k": args.k, "dn": args.dn, "fano_index": args.fano_index}, out, ["quasi-regular family c = k t"]


def cmd_ypq(args):
    if args.from_ab is not None:
        a, b = args.from_ab
        p, q = admissible.ypq_from_ab(a, b)
    elif args.p is not None and args.q is not None:
        p, q = args.p, args.q
    else:
        raise UsageError("ypq needs --p and --q, or --from-ab a b")
    w, l1, l2 = admissible.ypq_bridge(p, q)
    j = make_join(FanoBase.projective_space(1), w)
    quo = quotient.reeb_quotient(j, ReebRay(1, 1))
    out = {
        "p": p,
        "q": q,
        "w": w,
        "l1": l1,
        "l2": l2,
        "quotient": quo,
        "regular_ray": joinmod.has_regular_ray(j, (1, 1)) if not w.is_trivial else None,
        "k": admissible.ypq_k(p, q),
    }
    inputs = {"p": args.p, "q": args.q, "from_ab": list(args.from_ab) if args.from_ab else None}
    return inputs, out, ["Y^{p,q} weights and relative indices"]


def cmd_soliton(args):
    sol = admissible.solve_soliton(_w(args.w), _v(args.v), args.dn, args.tol, args.fano_index)
    width = sol.a_hi - sol.a_lo
    out = {
        "a_lo": sol.a_lo,
        "a_hi": sol.a_hi,
        "bracket_width": width,
        "sign_lo": sol.sign_lo,
        "sign_hi": sol.sign_hi,
        "G0": sol.g0,
        "einstein": sol.is_einstein,
        "a": Approx(sol.a, float(width) / 2),
    }
    inputs = {"w": args.w, "v": args.v, "dn": args.dn, "tol": repr(args.tol), "fano_index": args.fano_index}
    return inputs, out, ["soliton weighted defect, interval-certified bisection"]


def cmd_extremal(args):
    sol = admissible.solve_extremal(_w(args.w), _v(args.v), args.dn, args.fano_index)
    out = {
        "P": sol.P,
        "F": sol.F,
        "positive": sol.positive,
        "endpoint_conditions": sol.endpoint_conditions(),
        "r": sol.data.r,
        "m1": sol.data.m1,
        "m2": sol.data.m2,
        "scalar_s": sol.data.scalar_s,
    }
    inputs = {"w": args.w, "v": args.v, "dn": args.dn, "fano_index": args.fano_index}
    return inputs, out, ["extremal profile linear system", "Sturm positivity on (-1,1)"]


def _enumerate_one(task):
    base_text, w_pair, v_max, regularity, einstein_only, rationality = task
    base = parse_base(base_text)
    w = WeightVector(*w_pair)
    j = make_join(base, w)
    if rationality is not None:
        if w.w1 == w.w2:
            return []
        sol = admissible.solve_ke_ray(w, base.d_N)
        kinds = {r.rationality for r in sol.roots}
        if rationality not in kinds:
            return []
    rows = []
    for v1 in range(1, v_max + 1):
        for v2 in range(1, v_max + 1):
            if gcd(v1, v2) != 1 or w.w1 * v2 == w.w2 * v1:
                continue
            v = ReebRay(v1, v2)
            q = quotient.reeb_quotient(j, v)
            if regularity is not None and q.regularity != regularity:
                continue
            defect = admissible.ke_defect(w, v, base.d_N)
            if einstein_only and defect != 0:
                continue
            rows.append({
                "w": w, "v": v, "l1": j.l1, "l2": j.l2, "s": q.s, "m1": q.m1, "m2": q.m2,
                "n": q.signed_degree, "regularity": q.regularity, "ke_defect": defect,
            })
    return rows


def cmd_enumerate(args):
    parse_base(args.base)
    tasks = []
    for w1 in range(1, args.w_max + 1):
        for w2 in range(1, w1 + 1):
            if gcd(w1, w2) == 1:
                tasks.append((args.base, (w1, w2), args.v_max, args.regularity, args.einstein_only, args.rationality))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_enumerate_one, tasks))
    else:
        chunks = [_enumerate_one(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r["w"].as_tuple(), r["v"].as_tuple()))
    inputs = {
        "base": args.base, "w_max": args.w_max, "v_max": args.v_max, "regularity": args.regularity,
        "einstein_only": args.einstein_only, "rationality": args.rationality,
    }
    return inputs, {"items": rows, "count": len(rows)}, ["batch quotient enumeration"]


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sasaki-join", description="Exact invariants of weighted Sasaki joins.")
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--exact-only", action="store_true", help="drop every approximate value")
    # the same flags are accepted after the subcommand name
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--exact-only", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("join", cmd_join, "relative Fano indices and smoothness")
    p.add_argument("--base", required=True)
    p.add_argument("--w", type=_pair, required=True)

    p = add("regular-cones", cmd_regular_cones, "w-cones containing a regular Reeb field")
    p.add_argument("--base", required=True)

    for name, func, help_ in (
        ("quotient", cmd_quotient, "quotient log pair of a ray"),
        ("periods", cmd_periods, "Reeb orbit periods"),
    ):
        p = add(name, func, help_)
        p.add_argument("--base", required=True)
        p.add_argument("--w", type=_pair, required=True)
        p.add_argument("--v", type=_pair, required=True)

    p = add("cohomology", cmd_cohomology, "integral cohomology ring")
    p.add_argument("--family", choices=("sphere", "quadric", "delpezzo"), required=True)
    p.add_argument("--w", type=_pair, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int, default=1)

    p = add("classes", cmd_classes, "weights with isomorphic cohomology")
    p.add_argument("--W", type=int, required=True)
    p.add_argument("--r", type=int, default=2)

    for name, func, help_ in (
        ("homotopy", cmd_homotopy, "homotopy equivalence of 7-dimensional sphere joins"),
        ("homeo", cmd_homeo, "Pontrjagin obstruction to homeomorphism"),
    ):
        p = add(name, func, help_)
        p.add_argument("--w", type=_pair, required=True)
        p.add_argument("--wprime", type=_pair, required=True)

    p = add("p1", cmd_p1, "first Pontrjagin class residue")
    p.add_argument("--w", type=_pair, required=True)

    p = add("ke-solve", cmd_ke_solve, "Einstein rays of a w-cone")
    p.add_argument("--w", type=_pair, required=True)
    p.add_argument("--dn", type=int, required=True)
    p.add_argument("--precision", type=_rational_arg)
    p.add_argument("--fano-index", type=int)

    p = add("ke-defect", cmd_ke_defect, "exact KE defect of a ray")
    p.add_argument("--w", type=_pair, required=True)
    p.add_argument("--v", type=_pair, required=True)
    p.add_argument("--dn", type=int, required=True)

    p = add("family", cmd_family, "quasi-regular Einstein family member")
    p.add_argument("--k", type=_rational_arg, required=True)
    p.add_argument("--dn", type=int, required=True)
    p.add_argument("--fano-index", type=int)

    p = add("ypq", cmd_ypq, "Y^{p,q} as a join")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--from-ab", type=int, nargs=2, metavar=("A", "B"))

    p = add("soliton", cmd_soliton, "Ricci soliton constant a")
    p.add_argument("--w", type=_pair, required=True)
    p.add_argument("--v", type=_pair, required=True)
    p.add_argument("--dn", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--fano-index", type=int)

    p = add("extremal", cmd_extremal, "extremal admissible profile")
    p.add_argument("--w", type=_pair, required=True)
    p.add_argument("--v", type=_pair, required=True)
    p.add_argument("--dn", type=int, required=True)
    p.add_argument("--fano-index", "--IN", dest="fano_index", type=int, required=True)

    p = add("enumerate", cmd_enumerate, "batch quotient data over ranges of w and v")
    p.add_argument("--base", required=True)
    p.add_argument("--w-max", type=int, required=True)
    p.add_argument("--v-max", type=int, required=True)
    p.add_argument("--regularity", choices=(quotient.REGULAR, quotient.QUASI_REGULAR))
    p.add_argument("--rationality", choices=(admissible.RATIONAL, admissible.IRRATIONAL))
    p.add_argument("--einstein-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        inputs, outputs, provenance = args.func(args)
        result = CommandResult(args.command, inputs, outputs, provenance)
        data = result.to_dict(args.exact_only)
        stdout.write((table(data) if args.format == "table" else dumps(data)) + "\n")
        return 0
    except ValidationError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except ComputationError as exc:
        stderr.write(f"computation failed: {exc}\n")
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
