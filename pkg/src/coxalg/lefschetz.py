"""Toric weak/strong Lefschetz checks, mixed Hessians and Euler identities.

Maximal rank of ``L^k : A_g -> A_h`` is an open condition on ``L``; the search
here tries the all-ones element first and then random integer points from a
seeded generator, so a found witness is exact while a miss is only evidence.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import (IdealPresentation, artinian_certify, degree_sort_key,
                      multiplication_matrix)
from .errors import DegeneratePairingError, HypothesisError, RingMismatchError
from .exact import Matrix, inverse, rank, solve
from .grading import cover_relations
from .polyring import Polynomial, apply_diff

__all__ = [
    "LinearSpace",
    "ComparabilityEdge",
    "WitnessResult",
    "LefschetzReport",
    "HessianData",
    "linear_spaces",
    "comparability_graph",
    "maximal_rank_witness",
    "twlp_check",
    "tslp_check",
    "dual_basis",
    "mixed_hessian",
    "phi_linear_functional",
    "hessian_criterion_verify",
    "euler_identity_check",
    "generalized_euler_holds",
    "differential_euler_holds",
]


@dataclass(frozen=True)
class LinearSpace:
    degree: object
    variables: tuple
    dimension: int


@dataclass(frozen=True)
class ComparabilityEdge:
    source: object
    target: object
    l: object
    k: int
    kind: str

    def __str__(self):
        return f"{self.source} -[{self.l},{self.k}]-> {self.target}"


@dataclass(frozen=True)
class WitnessResult:
    edge: ComparabilityEdge
    found: bool
    rank: int
    target_rank: int
    witness: Polynomial
    tries: int

    def line(self):
        w = f"witness L = {self.witness}" if self.found else \
            f"no witness in {self.tries} tries (best L = {self.witness})"
        return (f"{self.edge.source} -[{self.edge.l},{self.edge.k}]-> {self.edge.target}: "
                f"rank {self.rank}/{self.target_rank}, {w}")


@dataclass(frozen=True)
class LefschetzReport:
    mode: str
    results: tuple
    pair_verdicts: dict
    holds: bool
    preorder: bool

    def lines(self):
        out = [r.line() for r in self.results]
        if self.preorder:
            out.append("note: the order is only a preorder; consecutive pairs are "
                       "cover relations among realized degrees")
        out.append(f"{self.mode.upper()}: {'holds' if self.holds else 'not verified'}")
        return out


def linear_spaces(support):
    """For each variable degree ``l``, the span of the variable classes in ``A_l``."""
    ring = support.ring
    by_degree = {}
    for i, d in enumerate(ring.degrees):
        by_degree.setdefault(d, []).append(i)
    result = {}
    for l, idx in by_degree.items():
        s = support.slice(l)
        vecs = [s.coordinates(ring.var(i)) for i in idx]
        dim = rank(Matrix(vecs, s.h)) if vecs else 0
        result[l] = LinearSpace(l, tuple(idx), dim)
    return dict(sorted(result.items(), key=lambda kv: degree_sort_key(ring, kv[0])))


def _multiple(ring, diff, l):
    """``k >= 1`` with ``diff = k*l``, or ``None``."""
    pl = ring.phi(l)
    k = ring.phi(diff) / pl
    if k.denominator != 1 or k < 1:
        return None
    k = int(k)
    return k if k * l == diff else None


def comparability_graph(support):
    """All linearly comparable triples ``(g, l, k)`` with ``g + k l`` in the support."""
    support.require_artinian()
    ring = support.ring
    sup = sorted(support.support, key=lambda g: degree_sort_key(ring, g))
    covers = set(cover_relations(sup, ring.order, ring))
    spaces = [s for s in linear_spaces(support).values() if s.dimension > 0]
    edges = []
    for g in sup:
        for h in sup:
            if h == g or not ring.leq(g, h):
                continue
            for sp in spaces:
                k = _multiple(ring, h - g, sp.degree)
                if k is None:
                    continue
                kind = "consecutive" if k == 1 and (g, h) in covers else "comparable"
                edges.append(ComparabilityEdge(g, h, sp.degree, k, kind))
    return edges


def _linear_element(ring, indices, coeffs):
    t = {}
    for i, c in zip(indices, coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        t[tuple(e)] = c
    return Polynomial(ring, t)


def _edge_seed(seed, edge):
    return f"{seed}|{edge.source}|{edge.target}|{edge.l}|{edge.k}"


def _candidates(ring, indices, rng, trials):
    yield _linear_element(ring, indices, [1] * len(indices))
    for t in range(trials):
        width = 2 + t // 3
        coeffs = [0] * len(indices)
        while not any(coeffs):
            coeffs = [rng.randint(-width, width) for _ in indices]
        yield _linear_element(ring, indices, coeffs)


def _power_rank(support, L, edge):
    M = multiplication_matrix(support.ideal, L ** edge.k, edge.source)
    return rank(M)


def maximal_rank_witness(support, edge, trials=20, seed=0):
    """Search ``L`` in the linear space of degree ``edge.l`` with ``L^k`` of maximal rank."""
    ring = support.ring
    target = min(support.h(edge.source), support.h(edge.target))
    indices = [i for i, d in enumerate(ring.degrees) if d == edge.l]
    rng = random.Random(_edge_seed(seed, edge))
    best = (-1, None)
    tries = 0
    for L in _candidates(ring, indices, rng, trials):
        tries += 1
        r = _power_rank(support, L, edge)
        if r > best[0]:
            best = (r, L)
        if r == target:
            return WitnessResult(edge, True, r, target, L, tries)
    return WitnessResult(edge, False, best[0], target, best[1], tries)


def _check(support, mode, trials, seed, uniform):
    edges = comparability_graph(support)
    if mode == "twlp":
        edges = [e for e in edges if e.kind == "consecutive"]
    results = []
    if uniform:
        results = _uniform_results(support, edges, trials, seed)
    else:
        results = [maximal_rank_witness(support, e, trials, seed) for e in edges]
    pairs = {}
    for r in results:
        key = (r.edge.source, r.edge.target)
        pairs[key] = pairs.get(key, False) or r.found
    ring = support.ring
    return LefschetzReport(mode, tuple(results), pairs, all(pairs.values()),
                           ring.order.is_preorder_only(ring.group))


def _uniform_results(support, edges, trials, seed):
    ring = support.ring
    out = []
    by_l = {}
    for e in edges:
        by_l.setdefault(e.l, []).append(e)
    for l, group in by_l.items():
        indices = [i for i, d in enumerate(ring.degrees) if d == l]
        rng = random.Random(f"{seed}|uniform|{l}")
        chosen = None
        for L in _candidates(ring, indices, rng, trials):
            ranks = [_power_rank(support, L, e) for e in group]
            targets = [min(support.h(e.source), support.h(e.target)) for e in group]
            if chosen is None or sum(ranks) > sum(chosen[1]):
                chosen = (L, ranks, targets)
            if ranks == targets:
                break
        L, ranks, targets = chosen
        for e, r, t in zip(group, ranks, targets):
            out.append(WitnessResult(e, r == t, r, t, L, 0))
    return out


def twlp_check(support, trials=20, seed=0, uniform=False):
    """Toric weak Lefschetz: every linearly consecutive pair admits a maximal-rank ``L``."""
    return _check(support, "twlp", trials, seed, uniform)


def tslp_check(support, trials=20, seed=0, uniform=False):
    """Toric strong Lefschetz: every linearly comparable pair admits a maximal-rank ``L^k``."""
    return _check(support, "tslp", trials, seed, uniform)


def _operator_basis(support, g):
    s = support.slice(g)
    return [Polynomial(support.ring, {m: 1}) for m in s.standard_monomials]


def _value(alpha, f):
    return apply_diff(alpha, f).constant_value()


def dual_basis(f, h, C=None, support=None):
    """Poincare-dual basis ``C*`` of ``A_(omega-h)`` with ``(c*_i c_j)(f) = delta_ij``."""
    omega = f.require_homogeneous()
    if support is None:
        support = artinian_certify(IdealPresentation.annihilator(f))
    if C is None:
        C = _operator_basis(support, h)
    D = _operator_basis(support, omega - h)
    P = Matrix([[_value(d * c, f) for c in C] for d in D], len(C))
    try:
        Pinv = inverse(P)
    except (ValueError, ZeroDivisionError):
        raise DegeneratePairingError(
            f"pairing A_{omega - h} x A_{h} is degenerate ({P.shape[0]}x{P.shape[1]}, "
            f"rank {rank(P)})") from None
    Q = support.ring
    return [sum((Pinv[i, m] * D[m] for m in range(len(D))), Q.zero())
            for i in range(len(C))]


@dataclass(frozen=True)
class HessianData:
    rows: tuple
    cols: tuple
    entries: tuple

    def evaluate(self, point):
        return Matrix([[p.evaluate(point) for p in row] for row in self.entries],
                      len(self.cols))


def mixed_hessian(f, rows, cols):
    """Matrix of polynomials ``[(rows_i cols_j)(f)]``."""
    return HessianData(tuple(rows), tuple(cols),
                       tuple(tuple(apply_diff(r * c, f) for c in cols) for r in rows))


def phi_linear_functional(ring, l, omega):
    """A rational functional with ``phi(l) = 1`` and ``phi(omega)`` a positive integer.

    The positivity certificate rescaled to ``phi(l) = 1`` is preferred; when that
    gives a non-integer value at ``omega`` and ``l``, ``omega`` are independent, a
    functional with ``phi(omega)`` equal to the next integer is solved for.
    """
    cert = ring.require_certificate()
    scale = cert(l)
    phi = tuple(x / scale for x in cert.phi)
    value = sum((a * b for a, b in zip(phi, omega.free)), Fraction(0))
    if value.denominator == 1 and value > 0:
        return phi
    target = max(1, -(-value.numerator // value.denominator))
    sol = solve(Matrix([l.free, omega.free], ring.group.free_rank), [1, target])
    if sol is None:
        raise HypothesisError(f"no functional with phi({l}) = 1 takes a positive integer "
                              f"value at {omega}")
    return sol


def _phi_value(phi, g):
    return sum((Fraction(a) * b for a, b in zip(phi, g.free)), Fraction(0))


def _coefficient_point(L):
    point = [Fraction(0)] * L.ring.nvars
    for m, c in L.items():
        if sum(m) != 1:
            raise HypothesisError(f"{L} is not a linear element")
        point[m.index(1)] = c
    return point


def hessian_criterion_verify(f, g, h, L, B=None, C=None, phi=None):
    """Check ``[L^k]_B^C == k! * Hess^(C*, B)(a)`` exactly.

    Returns ``(holds, left, right)``: the multiplication matrix computed from the
    ideal slices and the scaled evaluated mixed Hessian.
    """
    omega = f.require_homogeneous()
    support = artinian_certify(IdealPresentation.annihilator(f))
    Q = support.ring
    if L.ring != Q:
        raise RingMismatchError("L must be an operator of the dual ring")
    l = L.require_homogeneous()
    ring = Q
    if phi is None:
        phi = phi_linear_functional(ring, l, omega)
    if _phi_value(phi, l) != 1:
        raise HypothesisError(f"L is not phi-linear: phi({l}) = {_phi_value(phi, l)}")
    w = _phi_value(phi, omega)
    if w.denominator != 1 or w <= 0:
        raise HypothesisError(f"phi({omega}) = {w} is not a positive integer")
    k = _multiple(ring, h - g, l)
    if g == h:
        k = 0
    if k is None:
        raise HypothesisError(f"{h} is not {g} plus a positive multiple of {l}")
    B = B if B is not None else _operator_basis(support, g)
    C = C if C is not None else _operator_basis(support, h)
    src, dst = support.slice(g), support.slice(h)
    Lk = L ** k
    C_coords = Matrix.from_columns([dst.coordinates(c) for c in C], dst.h)
    images = [dst.coordinates(Lk * b) if not (Lk * b).is_zero() else [0] * dst.h
              for b in B]
    std = Matrix.from_columns(images, dst.h)
    try:
        left = inverse(C_coords) @ std
    except (ValueError, ZeroDivisionError):
        raise HypothesisError("C is not a basis of A_h") from None
    if rank(Matrix.from_columns([src.coordinates(b) for b in B], src.h)) != len(B) \
            or len(B) != src.h:
        raise HypothesisError("B is not a basis of A_g")
    C_star = dual_basis(f, h, C, support)
    right = mixed_hessian(f, C_star, B).evaluate(_coefficient_point(L)) * factorial(k)
    return left == right, left, right


def generalized_euler_holds(f, phi):
    """``sum phi(g_i) x_i df/dx_i == phi(deg f) f``."""
    omega = f.require_homogeneous()
    S = f.ring
    Q = S.dual()
    lhs = S.zero()
    for i in range(S.nvars):
        w = _phi_value(phi, S.degrees[i])
        if w:
            lhs = lhs + S.var(i) * apply_diff(Q.var(i), f) * w
    return lhs == f * _phi_value(phi, omega)


def differential_euler_holds(f, L, phi):
    """``L^phi(omega) f == phi(omega)! f(a)`` for a phi-linear ``L``.

    Requires ``phi`` positive on every variable degree: with a zero weight the
    identity fails (``X`` on ``x u`` with ``deg x = (1,0)``, ``deg u = (0,1)``,
    ``phi = (1,0)`` gives ``u``, not ``0``).
    """
    omega = f.require_homogeneous()
    S = f.ring
    if any(_phi_value(phi, d) <= 0 for d in S.degrees):
        raise HypothesisError("phi must be positive on every variable degree")
    l = L.require_homogeneous()
    if _phi_value(phi, l) != 1:
        raise HypothesisError(f"L is not phi-linear: phi({l}) = {_phi_value(phi, l)}")
    n = _phi_value(phi, omega)
    if n.denominator != 1 or n < 0:
        raise HypothesisError(f"phi({omega}) = {n} is not a nonnegative integer")
    n = int(n)
    lhs = apply_diff(L ** n, f)
    return lhs == S.one() * (factorial(n) * f.evaluate(_coefficient_point(L)))


def euler_identity_check(f, phi, L=None):
    """Both Euler identities; the differential one only when ``L`` is given."""
    gen = generalized_euler_holds(f, phi)
    diff = differential_euler_holds(f, L, phi) if L is not None else None
    return gen, diff
