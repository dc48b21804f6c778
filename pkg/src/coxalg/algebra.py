"""Degree-by-degree linear algebra in graded quotients ``S/I`` and ``Q/Ann(f)``.

Ideals are never handled through Groebner bases: every question is reduced to
a finite-dimensional slice ``I_g`` of a graded piece, stored in reduced
row-echelon form over the monomial basis of ``S_g``.
"""

import heapq
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .errors import (DegeneratePairingError, HypothesisError, NotArtinianError,
                     NotHomogeneousError, NotMaximalError, RingMismatchError)
from .exact import Matrix, kernel_basis, left_kernel_basis, rank, rref
from .polyring import Polynomial, apply_diff, catalecticant, monomials_of_degree

__all__ = [
    "IdealPresentation",
    "DegreeSliceBasis",
    "AlgebraSupport",
    "GorensteinVerdict",
    "ideal_slice",
    "hilbert_function",
    "degrees_up_to",
    "degree_sort_key",
    "artinian_certify",
    "multiplication_matrix",
    "socle_slice",
    "is_cox_gorenstein",
    "poincare_pairing",
    "artinianize",
    "gorensteinize",
    "colon_slice",
    "inverse_system_slice",
    "cyclic_module_slice",
    "annihilator_generators",
]


@dataclass(frozen=True)
class IdealPresentation:
    """A homogeneous ideal of ``ring`` given by any sum of the following parts.

    * ``generators``: homogeneous polynomials of ``ring``;
    * ``span_degrees``: degrees ``h`` contributing the whole piece ``ring_h``;
    * ``apolar``: a homogeneous form ``f`` of the dual ring, contributing ``Ann(f)``;
    * ``colon``: a pair ``(J, F)`` contributing ``(J : F)``.
    """

    ring: object
    generators: tuple = ()
    span_degrees: tuple = ()
    apolar: Polynomial = None
    colon: tuple = None
    _cache: dict = field(default_factory=dict, init=False, compare=False,
                         repr=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False,
                                  compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "span_degrees", tuple(self.span_degrees))
        for p in self.generators:
            if p.ring != self.ring:
                raise RingMismatchError(f"generator {p} lives in another ring")
            if p.is_zero():
                continue
            if not p.homogeneous:
                raise NotHomogeneousError(f"generator {p} is not homogeneous")
        for h in self.span_degrees:
            if h.group != self.ring.group:
                raise RingMismatchError(f"span degree {h} is not in {self.ring.group}")
        if self.apolar is not None:
            f = self.apolar
            if self.ring.role != "Q" or f.ring.role != "S" or not f.ring.same_grading(self.ring):
                raise RingMismatchError("Ann(f) needs f in S and the ideal in the dual ring Q")
            f.require_homogeneous()
        if self.colon is not None:
            J, F = self.colon
            if J.ring != self.ring or F.ring != self.ring:
                raise RingMismatchError("colon ideal parts live in another ring")
            F.require_homogeneous()

    @classmethod
    def annihilator(cls, f, ring=None):
        """``Ann(f)`` inside the dual ring of ``f``'s ring."""
        return cls(ring or f.ring.dual(), apolar=f)

    @classmethod
    def quotient_colon(cls, J, F):
        """The colon ideal ``(J : F)``; ``F`` must not lie in ``J``."""
        F.require_homogeneous()
        if ideal_slice(J, F.degree).contains(F):
            raise HypothesisError(f"{F} lies in the ideal, so the colon is the unit ideal")
        return cls(J.ring, colon=(J, F))

    def add(self, generators=(), span_degrees=()):
        """The sum of this ideal with more generators and spans (order preserved)."""
        spans = list(self.span_degrees)
        for h in span_degrees:
            if h not in spans:
                spans.append(h)
        return IdealPresentation(self.ring, self.generators + tuple(generators),
                                 tuple(spans), self.apolar, self.colon)

    def slice(self, g):
        return ideal_slice(self, g)


@dataclass(frozen=True)
class DegreeSliceBasis:
    degree: object
    ambient: tuple
    ideal_rref: Matrix
    pivots: tuple
    standard_monomials: tuple
    standard_positions: tuple

    @property
    def h(self):
        return len(self.standard_monomials)

    @property
    def ideal_dimension(self):
        return len(self.pivots)

    def ambient_vector(self, p):
        if p.is_zero():
            return [Fraction(0)] * len(self.ambient)
        if p.degree != self.degree:
            raise NotHomogeneousError(f"{p} does not have degree {self.degree}")
        return p.coordinates(self.ambient)

    def reduce_vector(self, v):
        """Normal form of an ambient coordinate vector modulo ``I_g``."""
        v = list(v)
        for r, p in enumerate(self.pivots):
            c = v[p]
            if c:
                row = self.ideal_rref.row(r)
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def standard_coordinates(self, v):
        """Coordinates of the class of ``v`` in the standard-monomial basis of ``A_g``."""
        v = self.reduce_vector(v)
        return [v[i] for i in self.standard_positions]

    def coordinates(self, p):
        return self.standard_coordinates(self.ambient_vector(p))

    def contains(self, p):
        return not any(self.reduce_vector(self.ambient_vector(p)))

    def ideal_basis(self, ring):
        """The rref rows of ``I_g`` as polynomials."""
        return [Polynomial.from_vector(ring, self.ambient, self.ideal_rref.row(r))
                for r in range(self.ideal_rref.shape[0])]

    def lift(self, ring, coords):
        """Polynomial representative of standard coordinates."""
        return Polynomial.from_vector(ring, self.standard_monomials, coords)


def _monomial_product(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _generator_rows(I, g, ambient, index):
    ring = I.ring
    rows = []
    for p in I.generators:
        if p.is_zero():
            continue
        for m in monomials_of_degree(ring, g - p.degree):
            v = [Fraction(0)] * len(ambient)
            for t, c in p.items():
                v[index[_monomial_product(m, t)]] += c
            rows.append(v)
    for h in I.span_degrees:
        base = monomials_of_degree(ring, h)
        if not base:
            continue
        for m in ambient:
            if any(_divides(b, m) for b in base):
                v = [Fraction(0)] * len(ambient)
                v[index[m]] = Fraction(1)
                rows.append(v)
    if I.apolar is not None:
        C = catalecticant(I.apolar, g)
        rows.extend(kernel_basis(C).T.tolist())
    if I.colon is not None:
        J, F = I.colon
        target = ideal_slice(J, g + F.degree)
        cols = []
        for m in ambient:
            prod_poly = Polynomial(ring, {_monomial_product(m, t): c for t, c in F.items()})
            cols.append(target.standard_coordinates(target.ambient_vector(prod_poly)))
        M = Matrix.from_columns(cols, target.h)
        rows.extend(kernel_basis(M).T.tolist())
    return rows


def ideal_slice(I, g):
    """The degree-``g`` piece of ``I`` as a :class:`DegreeSliceBasis` (cached)."""
    key = ("slice", g)
    cached = I._cache.get(key)
    if cached is not None:
        return cached
    ambient = monomials_of_degree(I.ring, g)
    index = {m: i for i, m in enumerate(ambient)}
    rows = _generator_rows(I, g, ambient, index)
    R, pivots, r = rref(Matrix(rows, len(ambient)))
    R = R.submatrix(rows=range(r))
    pivset = set(pivots)
    positions = tuple(i for i in range(len(ambient)) if i not in pivset)
    result = DegreeSliceBasis(g, ambient, R, tuple(pivots),
                              tuple(ambient[i] for i in positions), positions)
    with I._lock:
        I._cache.setdefault(key, result)
    return result


def degree_sort_key(ring, g):
    return (ring.phi(g), g.key())


def degrees_up_to(ring, bound):
    """All degrees of nonzero monomials whose certificate value is at most ``bound``."""
    zero = ring.zero_degree()
    seen = {zero}
    stack = [zero]
    while stack:
        g = stack.pop()
        for d in set(ring.degrees):
            h = g + d
            if h not in seen and ring.phi(h) <= bound:
                seen.add(h)
                stack.append(h)
    return sorted(seen, key=lambda g: degree_sort_key(ring, g))


def hilbert_function(I, region):
    """``h_g`` for each degree in ``region`` (an iterable of degrees or a certificate bound)."""
    if isinstance(region, (int, Fraction)):
        region = degrees_up_to(I.ring, region)
    return {g: ideal_slice(I, g).h for g in region}


@dataclass(frozen=True)
class GorensteinVerdict:
    is_gorenstein: bool
    omega: object
    socle_dimensions: dict

    def socle_degrees(self):
        return [g for g, d in self.socle_dimensions.items() for _ in range(d)]


class AlgebraSupport:
    """The graded pieces of ``A = ring/I`` reachable from degree 0.

    ``status`` is ``"artinian"`` (all nonzero pieces found), ``"not_artinian"``
    (a variable has no power in ``I``, so infinitely many pieces are nonzero) or
    ``"inconclusive"`` (the exploration hit its certificate-value cap).
    """

    def __init__(self, ideal, slices, status, cap=None, reason=""):
        self.ideal = ideal
        self.ring = ideal.ring
        self.slices = slices
        self.status = status
        self.cap = cap
        self.reason = reason
        self._socle = {}

    @property
    def artinian(self):
        return self.status == "artinian"

    def require_artinian(self):
        if not self.artinian:
            raise NotArtinianError(f"the algebra is not certified Artinian ({self.status}"
                                   + (f": {self.reason}" if self.reason else "") + ")")

    @property
    def support(self):
        return [g for g in self.slices if self.slices[g].h > 0]

    @property
    def hilbert(self):
        return {g: s.h for g, s in self.slices.items() if s.h > 0}

    def slice(self, g):
        s = self.slices.get(g)
        return s if s is not None else ideal_slice(self.ideal, g)

    def h(self, g):
        return self.slice(g).h

    def maximal_elements(self):
        sup = self.support
        return [g for g in sup
                if not any(k != g and self.ring.leq(g, k) and not self.ring.leq(k, g)
                           for k in sup)]

    @property
    def greatest(self):
        sup = self.support
        for g in self.maximal_elements():
            if all(self.ring.leq(k, g) for k in sup):
                return g
        return None

    def total_dimension(self):
        return sum(self.hilbert.values())

    def multiplication_matrix(self, P, g, degree=None):
        return multiplication_matrix(self.ideal, P, g, degree)

    def socle_slice(self, g):
        return socle_slice(self, g)

    def socle_dimensions(self):
        self.require_artinian()
        dims = {}
        for g in self.support:
            d = len(self.socle_slice(g))
            if d:
                dims[g] = d
        return dims


def artinian_certify(I, cap=None):
    """Explore the nonzero pieces of ``A = ring/I`` in increasing certificate value.

    Every nonzero piece other than degree 0 is a variable times a nonzero piece,
    so expanding only nonzero pieces reaches all of them; an exhausted frontier
    certifies that ``A`` is Artinian. ``cap`` bounds the certificate values
    explored (default: unlimited when a power of every variable lies in ``I``).
    """
    ring = I.ring
    ring.require_certificate()
    witness = _non_artinian_variable(I)
    if witness is not None and cap is None:
        cap = _default_cap(I)
    zero = ring.zero_degree()
    heap = [(degree_sort_key(ring, zero), zero)]
    queued = {zero}
    slices = {}
    variable_degrees = sorted(set(ring.degrees), key=lambda d: degree_sort_key(ring, d))
    while heap:
        (value, _), g = heapq.heappop(heap)
        if cap is not None and value > cap:
            if witness is not None:
                return AlgebraSupport(I, slices, "not_artinian", cap,
                                      f"no power of {ring.names[witness]} lies in the ideal")
            return AlgebraSupport(I, slices, "inconclusive", cap,
                                  f"exploration cap {cap} reached")
        s = ideal_slice(I, g)
        if s.h == 0:
            continue
        slices[g] = s
        for d in variable_degrees:
            h = g + d
            if h not in queued:
                queued.add(h)
                heapq.heappush(heap, (degree_sort_key(ring, h), h))
    return AlgebraSupport(I, slices, "artinian", cap)


def _default_cap(I):
    ring = I.ring
    top = max(ring.phi(d) for d in ring.degrees)
    gens = [ring.phi(p.degree) for p in I.generators if not p.is_zero()]
    gens += [ring.phi(h) for h in I.span_degrees]
    return 2 * (max(gens, default=0) + top) + 4 * top


def _non_artinian_variable(I):
    """Index of a variable none of whose powers can lie in ``I``, if detectable.

    Setting every other variable to zero is a ring map onto ``K[x_i]``; if all
    generators map to zero and no spanned piece contains a power of ``x_i``,
    then ``x_i^k`` is never in ``I``.
    """
    if I.apolar is not None or I.colon is not None:
        return None
    ring = I.ring
    for i in range(ring.nvars):
        hit = any(all(e == 0 for j, e in enumerate(m) if j != i)
                  for p in I.generators for m, _ in p.items())
        if hit:
            continue
        hit = any(any(all(e == 0 for j, e in enumerate(m) if j != i)
                      for m in monomials_of_degree(ring, h))
                  for h in I.span_degrees)
        if not hit:
            return i
    return None


def multiplication_matrix(I, P, g, degree=None):
    """Matrix of ``A_g -> A_(g + deg P)``, ``a -> P a``, in standard-monomial bases.

    Columns are indexed by the source basis, rows by the target basis.
    ``degree`` gives the degree of ``P`` when ``P`` is zero.
    """
    if P.is_zero():
        if degree is None:
            raise NotHomogeneousError("the zero multiplier needs an explicit degree")
    else:
        degree = P.require_homogeneous()
    src = ideal_slice(I, g)
    dst = ideal_slice(I, g + degree)
    cols = []
    for m in src.standard_monomials:
        v = [Fraction(0)] * len(dst.ambient)
        if not P.is_zero():
            index = {mm: i for i, mm in enumerate(dst.ambient)}
            for t, c in P.items():
                v[index[_monomial_product(m, t)]] += c
        cols.append(dst.standard_coordinates(v))
    return Matrix.from_columns(cols, dst.h)


def socle_slice(support, g):
    """Basis (standard coordinates) of ``soc(A)_g``: classes killed by every variable."""
    support.require_artinian()
    cached = support._socle.get(g)
    if cached is not None:
        return cached
    I = support.ideal
    h = support.h(g)
    M = Matrix.zeros(0, h)
    for x in support.ring.variables():
        M = M.stack(multiplication_matrix(I, x, g))
    K = kernel_basis(M)
    result = [tuple(K.column(j)) for j in range(K.shape[1])]
    support._socle[g] = result
    return result


def is_cox_gorenstein(support):
    """Cox-Gorenstein iff the socle is one-dimensional; ``omega`` is its degree."""
    dims = support.socle_dimensions()
    total = sum(dims.values())
    omega = next(iter(dims)) if total == 1 else None
    return GorensteinVerdict(total == 1, omega, dims)


def poincare_pairing(support, omega, g):
    """Matrix of ``A_g x A_(omega-g) -> A_omega``; rows for ``A_g``, columns for ``A_(omega-g)``."""
    top = support.slice(omega)
    if top.h != 1:
        raise DegeneratePairingError(f"dim A_{omega} = {top.h}, expected 1")
    left = support.slice(g)
    right = support.slice(omega - g)
    index = {m: i for i, m in enumerate(top.ambient)}
    rows = []
    for a in left.standard_monomials:
        row = []
        for b in right.standard_monomials:
            v = [Fraction(0)] * len(top.ambient)
            v[index[_monomial_product(a, b)]] = Fraction(1)
            row.append(top.standard_coordinates(v)[0])
        rows.append(row)
    return Matrix(rows, right.h)


def pairing_is_perfect(support, omega, g):
    P = poincare_pairing(support, omega, g)
    n, m = P.shape
    return n == m and rank(P) == n


def artinianize(I, omega, cap=None):
    """Smallest ideal ``J >= I`` whose quotient is Artinian with greatest degree ``omega``.

    Adds the whole piece ``S_h`` for every minimal nonzero degree ``h`` of
    ``S/I`` that is incomparable with ``omega``; pieces below ``omega`` are kept.
    """
    ring = I.ring
    if ideal_slice(I, omega).h == 0:
        raise NotMaximalError(f"the quotient vanishes in degree {omega}")
    zero = ring.zero_degree()
    heap = [(degree_sort_key(ring, zero), zero)]
    queued = {zero}
    candidates = []
    while heap:
        _, g = heapq.heappop(heap)
        if ideal_slice(I, g).h == 0:
            continue
        below = ring.leq(g, omega)
        if not below:
            if ring.leq(omega, g):
                raise NotMaximalError(f"{omega} is not maximal: the quotient is nonzero "
                                      f"in degree {g}")
            candidates.append(g)
            continue
        for d in ring.degrees:
            h = g + d
            if h not in queued:
                queued.add(h)
                heapq.heappush(heap, (degree_sort_key(ring, h), h))
    keep = []
    for h2 in candidates:
        top = monomials_of_degree(ring, h2)
        redundant = any(
            h1 != h2 and all(any(_divides(b, m) for b in monomials_of_degree(ring, h1))
                             for m in top)
            for h1 in candidates)
        if not redundant:
            keep.append(h2)
    if not keep:
        return I
    keep.sort(key=lambda g: g.key())
    return I.add(span_degrees=keep)


def gorensteinize(support, omega=None):
    """The Cox-Gorenstein quotient keeping ``A_omega``.

    With ``Lambda`` the coordinate functional of the one-dimensional ``A_omega``,
    ``J_g`` is the left kernel of ``S_g x S_(omega-g) -> Q``,
    ``(P, R) -> Lambda(P R)``; the returned presentation adds lifts of that
    kernel to the generators of ``I``.
    """
    support.require_artinian()
    greatest = support.greatest
    if omega is None:
        omega = greatest
    if greatest is None or omega != greatest:
        raise NotMaximalError(f"{omega} is not the greatest degree of the support")
    if support.h(omega) != 1:
        raise DegeneratePairingError(f"dim A_{omega} = {support.h(omega)}, expected 1")
    ring = support.ring
    extra = []
    for g in support.support:
        P = poincare_pairing(support, omega, g)
        s = support.slice(g)
        for v in left_kernel_basis(P).columns():
            extra.append(s.lift(ring, v))
    if not extra:
        return support.ideal
    return support.ideal.add(generators=extra)


def colon_slice(Iprime, F, g):
    """``(I' : F)_g`` as a :class:`DegreeSliceBasis`."""
    return ideal_slice(IdealPresentation.quotient_colon(Iprime, F), g)


def _factorial_weight(exps):
    return prod(factorial(e) for e in exps)


def inverse_system_slice(I, g):
    """Basis of ``(I^-1)_g = {f in S_g : alpha(f) = 0 for all alpha in I}``.

    Only ``I_g`` matters in degree ``g``, and on ``Q_g x S_g`` the pairing is
    diagonal in monomials with entries ``prod a_i!``.
    """
    if I.ring.role != "Q":
        raise RingMismatchError("inverse systems are taken for ideals of the operator ring Q")
    S = I.ring.dual()
    s = ideal_slice(I, g)
    weights = [_factorial_weight(m) for m in s.ambient]
    rows = [[c * w for c, w in zip(s.ideal_rref.row(r), weights)]
            for r in range(s.ideal_rref.shape[0])]
    K = kernel_basis(Matrix(rows, len(s.ambient)))
    return [Polynomial.from_vector(S, s.ambient, K.column(j)) for j in range(K.shape[1])]


def cyclic_module_slice(f, g):
    """Basis of ``(Q f)_g``: the degree-``g`` derivatives of ``f``, row-reduced."""
    omega = f.require_homogeneous()
    Q = f.ring.dual()
    ambient = monomials_of_degree(f.ring, g)
    rows = []
    for a in monomials_of_degree(Q, omega - g):
        d = apply_diff(Polynomial(Q, {a: 1}), f)
        if not d.is_zero():
            rows.append(d.coordinates(ambient))
    R, _, r = rref(Matrix(rows, len(ambient)))
    return [Polynomial.from_vector(f.ring, ambient, R.row(i)) for i in range(r)]


def annihilator_generators(f):
    """Minimal homogeneous generators of ``Ann(f)``, grouped by degree.

    Above certificate value ``phi(omega) + max phi(deg X_i)`` every piece is
    generated from below, so the search is finite.
    """
    I = IdealPresentation.annihilator(f)
    Q = I.ring
    omega = f.require_homogeneous()
    bound = Q.phi(omega) + max(Q.phi(d) for d in Q.degrees)
    result = {}
    for g in degrees_up_to(Q, bound):
        s = ideal_slice(I, g)
        if not s.ideal_dimension:
            continue
        generated = []
        for i, x in enumerate(Q.variables()):
            lower = g - Q.degrees[i]
            if not monomials_of_degree(Q, lower):
                continue
            for p in ideal_slice(I, lower).ideal_basis(Q):
                generated.append(s.ambient_vector(x * p))
        current = rank(Matrix(generated, len(s.ambient)))
        new = []
        for p in s.ideal_basis(Q):
            trial = generated + [s.ambient_vector(p)]
            r = rank(Matrix(trial, len(s.ambient)))
            if r > current:
                generated, current = trial, r
                new.append(p)
        if new:
            result[g] = new
    return result
