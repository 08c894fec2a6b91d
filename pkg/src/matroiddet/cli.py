"""Command line front end.

Exit codes: 0 success, 2 bad input or violated precondition, 3 a
verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from . import discriminant as disc
from .errors import AnnihilationFailure, MatroidDetError
from .exact import format_rational, parse_rational
from .io import load_matrix, load_multiplicities, load_poly
from .matroid import Matroid
from .newton import build_newton_el, is_generalized_permutohedron, vertices
from .tropical import uniform_discriminant_degree
from .weyl import (Parameters, annihilation_check, banana_matrix, build_system,
                   lauricella_series)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(Exception):
    pass


def _emit(args, payload: dict, lines: list[str]):
    if args.quiet:
        return
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _rationals(text: str) -> list[Fraction]:
    try:
        return [parse_rational(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise InputError(str(e)) from None


def _matroid(path) -> Matroid:
    try:
        A = load_matrix(path)
    except (OSError, ValueError, KeyError) as e:
        raise InputError(f"cannot read matrix {path}: {e}") from None
    return Matroid(A)


def _chi_text(M: Matroid) -> str:
    return M.characteristic_polynomial().to_text("q").replace("q0", "q")


# -- commands ----------------------------------------------------------------

def cmd_analyze(args) -> int:
    M = _matroid(args.matrix)
    mult = load_multiplicities(args.multiplicities) if args.multiplicities else None
    lattice = M.flats()
    nonempty = [F for F in lattice.flats if F]
    circuits = M.circuits()
    chi = M.characteristic_polynomial().univariate_coefficients()
    degrees = {f"L^{k}": disc.degree_lk(M, k) for k in (1, 2, -1, -2)}
    degrees["E_L"] = disc.degree_el(M)
    desc = disc.factorization_descriptor(M, mult, seed=args.seed)
    predicted = None
    if M.is_connected():
        value, conj = disc.predicted_discriminant_degree(M)
        predicted = {"degree": value, "conjectural": conj}
    payload = {
        "matroid": {
            "n": M.n,
            "d": M.d,
            "rank": M.full_rank,
            "flats": [sorted(F) for F in lattice.flats],
            "nonempty_flats": len(nonempty),
            "circuits": [{"support": list(c.support), "coefficients": [format_rational(x) for x in c.coefficients]}
                         for c in circuits],
            "components": [sorted(C) for C in M.components()],
            "chi": [format_rational(x) for x in chi],
            "mu": M.mobius_invariant(),
            "beta": M.beta_invariant(),
        },
        "degrees": degrees,
        "discriminant": predicted,
        "factorization": desc.to_json(),
    }
    lines = [
        f"n = {M.n}, d = {M.d}, rank = {M.full_rank}",
        f"nonempty flats: {len(nonempty)}; circuits: {len(circuits)}; components: {M.num_components()}",
        f"chi(q) = {_chi_text(M)}",
        f"mu = {M.mobius_invariant()}, beta = {M.beta_invariant()}",
        "degrees: " + ", ".join(f"deg {k} = {v}" for k, v in degrees.items()),
    ]
    if predicted:
        tag = " (conjectural)" if predicted["conjectural"] else ""
        lines.append(f"discriminant degree: {predicted['degree']}{tag}")
    lines.append("flat | rank | connected | defective | degree | multiplicity")
    for row in desc.rows:
        lines.append(f"{sorted(row.flat)} | {row.rank} | {row.connected} | {row.defective} | "
                     f"{row.degree}{'*' if row.conjectural else ''} | {row.multiplicity}")
    if desc.degree_sum is not None:
        lines.append(f"sum m_F deg_F = {desc.degree_sum} vs deg E_L = {desc.degree_el}: "
                     + ("consistent" if desc.consistent else "INCONSISTENT"))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_hk_check(args) -> int:
    M = _matroid(args.matrix)
    if args.target is None:
        verdict = disc.is_dual_defective(M.A, args.samples, args.seed)
        lines = [verdict.kind + (" (certified)" if verdict.certified else ""), verdict.reason]
        if verdict.witness_t is not None:
            lines.append("witness t = " + ", ".join(map(format_rational, verdict.witness_t))
                         + "; u = " + ", ".join(map(format_rational, verdict.witness_u)))
        _emit(args, verdict.to_json(), lines)
        return EXIT_OK
    try:
        target = load_poly(args.target)
    except (OSError, ValueError, KeyError) as e:
        raise InputError(f"cannot read polynomial {args.target}: {e}") from None
    if target.nvars != M.size:
        raise InputError(f"target has {target.nvars} variables, matrix has {M.size} columns")
    for k, h in enumerate(disc.hk_samples(M.A, args.samples, args.seed)):
        value = target.evaluate(h.z)
        if value != 0:
            payload = {"ok": False, "sample": k, "z": [format_rational(x) for x in h.z],
                       "value": format_rational(value)}
            _emit(args, payload, [f"sample {k}: target evaluates to {format_rational(value)} at z = "
                                  + ", ".join(map(format_rational, h.z))])
            return EXIT_VERIFY
    _emit(args, {"ok": True, "samples": args.samples},
          [f"target vanishes at all {args.samples} samples"])
    return EXIT_OK


def cmd_operators(args) -> int:
    M = _matroid(args.matrix)
    u = _rationals(args.u)
    if len(u) != M.size:
        raise InputError(f"expected {M.size} values for u, got {len(u)}")
    params = Parameters.from_u(u, M.d)
    system = build_system(M, params)
    ops = system.all()
    payload = {"s": format_rational(params.s),
               "operators": [{"name": name, **op.to_json(), "text": op.to_text()}
                             for name, op in zip(system.labels(), ops)]}
    lines = [f"s = {format_rational(params.s)}"]
    lines += [f"{name}: {op.to_text()}" for name, op in zip(system.labels(), ops)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_annihilate(args) -> int:
    n = args.n
    if n < 2:
        raise InputError("n must be at least 2")
    u = _rationals(args.u)
    if len(u) != n + 1:
        raise InputError(f"expected {n + 1} values for u, got {len(u)}")
    M = Matroid(banana_matrix(n))
    params = Parameters.from_u(u, M.d)
    system = build_system(M, params)
    g = lauricella_series(n, params, args.order)
    try:
        report = annihilation_check(system.all(), g, args.order)
    except AnnihilationFailure as e:
        _emit(args, {"ok": False, "operator": system.labels()[e.operator_index],
                     "exponent": [format_rational(x) for x in e.exponent],
                     "coefficient": format_rational(e.coefficient)}, [f"FAILED: {e}"])
        return EXIT_VERIFY
    payload = {"ok": True, **report.to_json(),
               "labels": system.labels()}
    lines = [f"{label}: zero through order {c.verified_order}, {len(c.residual_terms)} boundary terms"
             for label, c in zip(system.labels(), report.checks)]
    lines.append(f"verified to order {report.max_verified_order}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_newton(args) -> int:
    M = _matroid(args.matrix)
    mult = load_multiplicities(args.multiplicities)
    desc = disc.factorization_descriptor(M, mult, seed=args.seed)
    S = build_newton_el(M, desc)
    P = vertices(S)
    gp = is_generalized_permutohedron(P)
    payload = {**P.to_json(), "generalized_permutohedron": gp,
               "summands": [{"flat": sorted(F), "coefficient": c} for F, c in S.summands]}
    lines = [f"{len(P.vertices)} vertices, coordinate sum {P.degree}"]
    lines += [" ".join(map(str, v)) for v in P.vertices]
    lines.append(f"generalized permutohedron: {gp}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_conjectures(args) -> int:
    if not 0 <= args.d < args.n:
        raise InputError("need 0 <= d < n")
    report = disc.conjecture_harness(args.n, args.d, args.trials, args.seed)
    lines = ["label | components | verdict | agrees | predicted degree"]
    for t in report.trials + [report.probe]:
        deg = "-" if t.predicted_degree is None else f"{t.predicted_degree}{'*' if t.conjectural else ''}"
        lines.append(f"{t.label} | {t.components} | {t.verdict.kind} | {t.agrees} | {deg}")
    lines.append(f"agreements: {sum(t.agrees for t in report.trials)}/{len(report.trials)}")
    cands = report.candidates
    lines.append("candidates needing attention: " + (", ".join(t.label for t in cands) if cands else "none"))
    _emit(args, report.to_json(), lines)
    return EXIT_OK


def cmd_uniform_degree(args) -> int:
    n, d = args.n, args.d
    if not 0 < d < n:
        raise InputError("need 0 < d < n")
    computed = uniform_discriminant_degree(n, d, check=False)
    closed = 2 ** d * comb(n - 1, d)
    _emit(args, {"n": n, "d": d, "computed": computed, "closed_form": closed, "equal": computed == closed},
          [f"computed {computed} = closed form {closed}" if computed == closed
           else f"computed {computed} != closed form {closed}"])
    return EXIT_OK if computed == closed else EXIT_VERIFY


# -- parser --------------------------------------------------------------------

def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", default=default(0), help="random seed (default 0)")
    p.add_argument("--format", choices=["text", "json"], default=default("text"))
    p.add_argument("--quiet", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matroiddet", description="Principal matroid determinants and matroid hypergeometric systems.")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="matroid invariants, degrees and flat factorization")
    p.add_argument("matrix")
    p.add_argument("--multiplicities")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hk-check", parents=[common], help="Horn-Kapranov samples and dual defectivity")
    p.add_argument("matrix")
    p.add_argument("--target")
    p.add_argument("--samples", type=int, default=disc.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_hk_check)

    p = sub.add_parser("operators", parents=[common], help="operators of the hypergeometric system")
    p.add_argument("matrix")
    p.add_argument("--u", required=True, help="comma separated rationals")
    p.set_defaults(func=cmd_operators)

    p = sub.add_parser("annihilate", parents=[common], help="check the banana series against its operators")
    p.add_argument("n", type=int)
    p.add_argument("--u", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_annihilate)

    p = sub.add_parser("newton", parents=[common], help="Newton polytope of the principal determinant")
    p.add_argument("matrix")
    p.add_argument("--multiplicities", required=True)
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("conjectures", parents=[common], help="connectivity vs dual defectivity experiments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("uniform-degree", parents=[common], help="discriminant degree of a generic plane")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_uniform_degree)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, MatroidDetError, OSError, ValueError) as e:
        if not args.quiet:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
