"""Command-line front end.

Exit status: 0 on success, 2 on a mathematical error (non-Artinian input,
degenerate pairing, ...), 1 on unreadable or malformed input.
"""

import argparse
import sys

from .algebra import (IdealPresentation, annihilator_generators, artinian_certify,
                      artinianize, degree_sort_key, degrees_up_to, gorensteinize,
                      hilbert_function, ideal_slice, is_cox_gorenstein, poincare_pairing)
from .errors import MathError, SpecParseError
from .exact import rank
from .hasse import adjacency_text, build_diagram, symmetry_check, to_dot
from .lefschetz import hessian_criterion_verify, tslp_check, twlp_check
from .polyring import parse_polynomial
from .specfile import dump_spec, load_spec
from .toric import ci_socle_check, reconstruct


def _target(spec, name):
    """An ideal by name, or ``Ann(f)`` for a polynomial name."""
    if name in spec.ideals:
        return spec.ideals[name]
    if name in spec.polynomials:
        return IdealPresentation.annihilator(spec.polynomials[name])
    raise SpecParseError(f"no ideal or polynomial named {name!r}", "ideals")


def _support(spec, name, cap=None):
    return artinian_certify(_target(spec, name), cap)


def _sorted(ring, degrees):
    return sorted(degrees, key=lambda g: degree_sort_key(ring, g))


def cmd_hilbert(args, spec, out):
    I = _target(spec, args.ideal)
    ring = I.ring
    if args.degree or args.bound is not None:
        region = [spec.degree(d, "--degree") for d in args.degree or []]
        if args.bound is not None:
            region += [g for g in degrees_up_to(ring, args.bound) if g not in region]
        for g, h in hilbert_function(I, _sorted(ring, region)).items():
            out.write(f"{g}: {h}\n")
        return 0
    support = artinian_certify(I, args.cap)
    support.require_artinian()
    for g in _sorted(ring, support.support):
        out.write(f"{g}: {support.h(g)}\n")
    out.write(f"total dimension: {support.total_dimension()}\n")
    greatest = support.greatest
    out.write(f"greatest: {greatest if greatest is not None else 'none'}\n")
    return 0


def cmd_annihilator(args, spec, out):
    f = spec.polynomial(args.f)
    if args.degree:
        I = IdealPresentation.annihilator(f)
        for text in args.degree:
            g = spec.degree(text, "--degree")
            basis = ideal_slice(I, g).ideal_basis(I.ring)
            out.write(f"{g}: " + (", ".join(str(p) for p in basis) or "0") + "\n")
        return 0
    for g, gens in annihilator_generators(f).items():
        out.write(f"{g}: " + ", ".join(str(p) for p in gens) + "\n")
    return 0


def cmd_hasse(args, spec, out):
    support = _support(spec, args.ideal, args.cap)
    d = build_diagram(support)
    out.write(adjacency_text(d))
    out.write(f"nodes: {len(d.nodes)}, edges: {len(d.edges)}, greatest: "
              f"{d.greatest if d.greatest is not None else 'none'}\n")
    if d.greatest is not None:
        out.write(f"symmetric about greatest: {'yes' if symmetry_check(d, d.greatest) else 'no'}\n")
    if d.preorder:
        out.write("note: the order is only a preorder on this group\n")
    if args.dot:
        text = to_dot(d)
        if args.dot == "-":
            out.write(text)
        else:
            try:
                with open(args.dot, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise SpecParseError(f"cannot write {args.dot}: {exc.strerror}", "--dot") \
                    from None
    return 0


def cmd_gorenstein(args, spec, out):
    support = _support(spec, args.ideal, args.cap)
    verdict = is_cox_gorenstein(support)
    ring = support.ring
    for g in _sorted(ring, verdict.socle_dimensions):
        out.write(f"socle {g}: dim {verdict.socle_dimensions[g]}\n")
    if verdict.is_gorenstein:
        out.write(f"Cox-Gorenstein: yes, socle degree {verdict.omega}\n")
    else:
        out.write("Cox-Gorenstein: no\n")
    omega = support.greatest
    if omega is not None and support.h(omega) == 1:
        for g in _sorted(ring, support.support):
            P = poincare_pairing(support, omega, g)
            r = rank(P)
            n, m = P.shape
            status = "perfect" if n == m == r else "degenerate"
            out.write(f"pairing {g} x {omega - g}: {n}x{m}, rank {r} ({status})\n")
    return 0


def _write_spec(args, spec, name, ideal, out):
    text = dump_spec(spec, {name: ideal})
    if args.output and args.output != "-":
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise SpecParseError(f"cannot write {args.output}: {exc.strerror}", "--output") \
                from None
    else:
        out.write(text)


def cmd_artinianize(args, spec, out):
    I = _target(spec, args.ideal)
    omega = spec.degree(args.omega, "--omega")
    J = artinianize(I, omega)
    _write_spec(args, spec, args.name or f"{args.ideal}_artinian", J, out)
    return 0


def cmd_gorensteinize(args, spec, out):
    support = _support(spec, args.ideal, args.cap)
    omega = spec.degree(args.omega, "--omega") if args.omega else None
    B = gorensteinize(support, omega)
    _write_spec(args, spec, args.name or f"{args.ideal}_gorenstein", B, out)
    return 0


def cmd_lefschetz(args, spec, out):
    support = _support(spec, args.f, args.cap)
    check = twlp_check if args.mode == "twlp" else tslp_check
    report = check(support, args.trials, args.seed, args.uniform)
    out.write("\n".join(report.lines()) + "\n")
    return 0


def _matrix_text(M):
    return "\n".join("  [" + ", ".join(str(x) for x in M.row(i)) + "]"
                     for i in range(M.shape[0])) or "  (empty)"


def cmd_hessian(args, spec, out):
    f = spec.polynomial(args.f)
    g = spec.degree(args.source, "--source")
    h = spec.degree(args.target, "--target")
    L = parse_polynomial(spec.dual, args.L)
    holds, left, right = hessian_criterion_verify(f, g, h, L)
    out.write(f"[L^k] from {g} to {h} with L = {L}:\n{_matrix_text(left)}\n")
    out.write(f"k! * Hess(a):\n{_matrix_text(right)}\n")
    out.write(f"criterion: {'holds' if holds else 'FAILS'}\n")
    return 0


def cmd_toric(args, spec, out):
    alphas = None
    if args.alphas:
        try:
            alphas = [int(x) for x in args.alphas.split(",")]
        except ValueError:
            raise SpecParseError(f"malformed --alphas {args.alphas!r}", "--alphas") from None
        if len(alphas) != spec.ring.nvars:
            raise SpecParseError("one alpha per variable is required", "--alphas")
    result = reconstruct(spec.ring, alphas)
    out.write("\n".join(result.lines(spec.ring)) + "\n")
    return 0


def cmd_ci_check(args, spec, out):
    forms = [spec.polynomial(name) for name in args.forms]
    report = ci_socle_check(spec.ring, forms, cap=args.cap)
    out.write("\n".join(report.lines(spec.ring)) + "\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="coxalg", description=(
        "Exact computations in group-graded polynomial rings: Hilbert functions, "
        "annihilators, Gorenstein and Lefschetz checks, toric reconstruction."))
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("spec", help="ring specification file (JSON)")
        sp.set_defaults(func=func)
        return sp

    def cap(sp):
        sp.add_argument("--cap", type=int, default=None,
                        help="certificate-value cap for the Artinian exploration")

    sp = add("hilbert", cmd_hilbert, "Hilbert function of a quotient")
    sp.add_argument("ideal", help="ideal name, or a polynomial name for Q/Ann(f)")
    sp.add_argument("--degree", action="append", help="degree such as '(2,1)' (repeatable)")
    sp.add_argument("--bound", type=int, help="all degrees with certificate value <= BOUND")
    cap(sp)

    sp = add("annihilator", cmd_annihilator, "generators of Ann(f)")
    sp.add_argument("f", help="polynomial name")
    sp.add_argument("--degree", action="append", help="list a basis of Ann(f) in this degree")

    sp = add("hasse", cmd_hasse, "Hasse-Hilbert diagram")
    sp.add_argument("ideal")
    sp.add_argument("--dot", help="write GraphViz DOT to this path ('-' for stdout)")
    cap(sp)

    sp = add("gorenstein", cmd_gorenstein, "socle, Cox-Gorenstein verdict, pairing ranks")
    sp.add_argument("ideal")
    cap(sp)

    sp = add("artinianize", cmd_artinianize, "minimal Artinian quotient with greatest degree")
    sp.add_argument("ideal")
    sp.add_argument("--omega", required=True)
    sp.add_argument("--name")
    sp.add_argument("-o", "--output")

    sp = add("gorensteinize", cmd_gorensteinize, "Cox-Gorenstein quotient")
    sp.add_argument("ideal")
    sp.add_argument("--omega")
    sp.add_argument("--name")
    sp.add_argument("-o", "--output")
    cap(sp)

    sp = add("lefschetz", cmd_lefschetz, "TWLP/TSLP check")
    sp.add_argument("f", help="polynomial name (uses Ann(f)) or ideal name")
    sp.add_argument("--mode", choices=("twlp", "tslp"), default="twlp")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--uniform", action="store_true",
                    help="require one linear element per degree for all edges")
    cap(sp)

    sp = add("hessian", cmd_hessian, "verify the toric Hessian criterion on one edge")
    sp.add_argument("f")
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--L", required=True, help="linear element in the operator ring")

    sp = add("toric", cmd_toric, "rays, fan and irrelevant ideal of the grading")
    sp.add_argument("--alphas", help="comma-separated integers (default all -1)")

    sp = add("ci-check", cmd_ci_check, "socle checks for a complete intersection")
    sp.add_argument("forms", nargs="+", help="polynomial names f_0 ... f_d")
    cap(sp)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        return args.func(args, spec, out)
    except SpecParseError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except MathError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
