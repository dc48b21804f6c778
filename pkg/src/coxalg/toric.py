"""Toric data from a grading: rays, normal fan, irrelevant ideal, divisor polytopes.

The kernel ``M`` of the degree map ``Z^n -> G`` is the character lattice; in
an HNF basis of ``M`` the ``i``-th row of the basis matrix is the ray of the
``i``-th variable. Everything downstream is exact and basis-independent up to
``GL_d(Z)``.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (IdealPresentation, artinian_certify, is_cox_gorenstein,
                      multiplication_matrix)
from .errors import (DegenerateGradingError, EmptyPolyhedronError, HypothesisError,
                     NoRepresentativeError)
from .exact import (Matrix, determinant, integer_kernel_with_congruences, inverse,
                    kernel_basis, primitive, rank, smith_normal_form, solve,
                    solve_integer)
from .polyring import monomial_sort_key

__all__ = [
    "RayData",
    "Fan",
    "Polyhedron",
    "MonomialIdeal",
    "Reconstruction",
    "CISocleReport",
    "weight_matrices",
    "rays_from_grading",
    "normal_fan",
    "polyhedron",
    "positively_spanning",
    "irrelevant_ideal",
    "reconstruct",
    "anticanonical_class",
    "divisor_representative",
    "divisor_polytope",
    "nef_check",
    "ci_socle_check",
    "gl_equivalent",
    "cokernel_invariants",
]


def weight_matrices(ring):
    """``(A_free, A_tors)`` with column ``i`` the free part / residues of ``deg x_i``."""
    n = ring.nvars
    rho = ring.group.free_rank
    A_free = Matrix([[d.free[j] for d in ring.degrees] for j in range(rho)], n)
    A_tors = Matrix([[d.torsion[j] for d in ring.degrees]
                     for j in range(len(ring.group.moduli))], n)
    return A_free, A_tors


@dataclass(frozen=True)
class RayData:
    rays: tuple
    kernel_basis: Matrix
    multiplicities: tuple

    @property
    def dimension(self):
        return self.kernel_basis.shape[1]


def rays_from_grading(ring):
    """Rays ``a_i`` (rows of the HNF kernel basis), primitivized."""
    A_free, A_tors = weight_matrices(ring)
    K = integer_kernel_with_congruences(A_free, A_tors, list(ring.group.moduli))
    rays, mult = [], []
    for i in range(ring.nvars):
        v, g = primitive(K.row(i))
        if g == 0:
            raise DegenerateGradingError(
                f"variable {ring.names[i]} has a zero ray: its degree is independent "
                "of the others")
        rays.append(v)
        mult.append(g)
    return RayData(tuple(rays), K, tuple(mult))


def cokernel_invariants(K):
    """``(free_rank, torsion_factors)`` of ``Z^rows / image(K)``."""
    _, D, _ = smith_normal_form(K)
    diag = [D[i, i] for i in range(min(D.shape))]
    nonzero = [x for x in diag if x]
    return K.shape[0] - len(nonzero), tuple(x for x in nonzero if x > 1)


@dataclass(frozen=True)
class Polyhedron:
    """``{xi : <xi, normals_i> >= alphas_i}`` with its vertices and recession rays."""

    normals: tuple
    alphas: tuple
    vertices: tuple
    active: tuple
    recession: tuple
    bounded: bool
    dimension: int

    @property
    def empty(self):
        return self.dimension < 0

    def contains(self, point):
        return all(sum(Fraction(a) * b for a, b in zip(n, point)) >= al
                   for n, al in zip(self.normals, self.alphas))

    def lattice_points(self):
        if not self.bounded:
            raise ValueError("an unbounded polyhedron has infinitely many lattice points")
        if self.empty:
            return []
        d = len(self.vertices[0])
        lo = [min(v[j] for v in self.vertices) for j in range(d)]
        hi = [max(v[j] for v in self.vertices) for j in range(d)]
        ranges = [range(-((-a.numerator) // a.denominator), b.numerator // b.denominator + 1)
                  for a, b in zip(lo, hi)]
        return [p for p in itertools.product(*ranges) if self.contains(p)]


@dataclass(frozen=True)
class Fan:
    dimension: int
    rays: tuple
    max_cones: tuple
    complete: bool
    nonsimplicial: tuple = ()
    unused_rays: tuple = ()

    def cone_rays(self, cone):
        return [self.rays[i] for i in cone]


@dataclass(frozen=True)
class MonomialIdeal:
    names: tuple
    generators: tuple

    def monomial_text(self, exps):
        parts = []
        for name, e in zip(self.names, exps):
            parts += [name] * e
        return "".join(parts) if all(len(n) == 1 for n in self.names) else \
            "*".join(parts) or "1"

    def as_strings(self):
        return [self.monomial_text(m) or "1" for m in self.generators]

    def as_sets(self):
        """Each generator as a frozenset of variable names (squarefree case)."""
        return {frozenset(n for n, e in zip(self.names, m) if e) for m in self.generators}

    def __str__(self):
        return "(" + ", ".join(self.as_strings()) + ")"


def _dot(a, b):
    return sum(Fraction(x) * y for x, y in zip(a, b))


def _recession_rays(normals, d):
    """Extreme rays of ``{v : <v, n_i> >= 0}`` when that cone is pointed."""
    out = []
    for subset in itertools.combinations(range(len(normals)), d - 1):
        M = Matrix([normals[i] for i in subset], d) if subset else Matrix.zeros(0, d)
        if rank(M) != d - 1:
            continue
        v = kernel_basis(M).column(0)
        for s in (1, -1):
            w = tuple(s * x for x in v)
            if all(_dot(w, n) >= 0 for n in normals) and any(_dot(w, n) for n in normals):
                p = _primitive_rational(w)
                if p not in out:
                    out.append(p)
    return out


def _primitive_rational(v):
    from math import lcm
    den = lcm(*[Fraction(x).denominator for x in v])
    return primitive(tuple(int(Fraction(x) * den) for x in v))[0]


def polyhedron(normals, alphas):
    """Vertices by solving every ``d``-subset of the inequalities."""
    normals = tuple(tuple(int(x) for x in n) for n in normals)
    alphas = tuple(Fraction(a) for a in alphas)
    if len(normals) != len(alphas):
        raise ValueError("one alpha per normal is required")
    d = len(normals[0])
    if rank(Matrix(normals, d)) < d:
        raise DegenerateGradingError("the normals do not span the ambient space")
    found = {}
    for subset in itertools.combinations(range(len(normals)), d):
        M = Matrix([normals[i] for i in subset], d)
        if determinant(M) == 0:
            continue
        xi = tuple(inverse(M).apply([alphas[i] for i in subset]))
        if xi in found:
            continue
        if all(_dot(xi, n) >= a for n, a in zip(normals, alphas)):
            found[xi] = tuple(i for i, (n, a) in enumerate(zip(normals, alphas))
                              if _dot(xi, n) == a)
    vertices = sorted(found)
    recession = _recession_rays(normals, d)
    bounded = not recession
    if not vertices:
        dim = -1
    else:
        pts = [tuple(x - y for x, y in zip(v, vertices[0])) for v in vertices[1:]]
        dim = rank(Matrix(pts + [tuple(r) for r in recession], d))
    return Polyhedron(normals, alphas, tuple(vertices),
                      tuple(found[v] for v in vertices), tuple(recession), bounded, dim)


def normal_fan(rays, alphas=None):
    """Normal fan of ``{xi : <xi, a_i> >= alpha_i}`` (default ``alpha_i = -1``).

    Maximal cones are the inequality sets active at each vertex; cones with
    more than ``d`` active rays are reported as non-simplicial.
    """
    rays = tuple(tuple(r) for r in rays)
    if alphas is None:
        alphas = [-1] * len(rays)
    P = polyhedron(rays, alphas)
    if P.empty:
        raise EmptyPolyhedronError("the polyhedron defined by the rays and alphas is empty")
    d = len(rays[0])
    cones = tuple(sorted(set(P.active)))
    nonsimplicial = tuple(c for c in cones if len(c) > d
                          or rank(Matrix([rays[i] for i in c], d)) < len(c))
    used = set(i for c in cones for i in c)
    fan = Fan(d, rays, cones, P.bounded, nonsimplicial,
              tuple(i for i in range(len(rays)) if i not in used))
    return fan, P


def _in_cone(v, gens):
    d = len(v)
    for size in range(0, d + 1):
        for subset in itertools.combinations(range(len(gens)), size):
            if size == 0:
                if not any(v):
                    return True
                continue
            M = Matrix.from_columns([gens[i] for i in subset], d)
            sol = solve(M, list(v))
            if sol is not None and all(x >= 0 for x in sol):
                return True
    return False


def positively_spanning(rays):
    """Rays positively span ``R^d`` iff they span and each ``-a_i`` lies in their cone."""
    d = len(rays[0])
    if rank(Matrix(rays, d)) < d:
        return False
    return all(_in_cone(tuple(-x for x in r), rays) for r in rays)


def irrelevant_ideal(fan, ring=None):
    """Minimal generators of ``(prod_{i not in sigma} x_i : sigma maximal)``."""
    n = len(fan.rays)
    names = ring.names if ring is not None else tuple(f"x{i + 1}" for i in range(n))
    gens = {tuple(0 if i in cone else 1 for i in range(n)) for cone in fan.max_cones}
    minimal = [m for m in gens
               if not any(o != m and all(a <= b for a, b in zip(o, m)) for o in gens)]
    minimal.sort(key=monomial_sort_key)
    return MonomialIdeal(tuple(names), tuple(minimal))


@dataclass(frozen=True)
class Reconstruction:
    ray_data: RayData
    fan: Fan
    polyhedron: Polyhedron
    ideal: MonomialIdeal
    cokernel: tuple

    def lines(self, ring):
        fan = self.fan
        out = [f"lattice rank d = {fan.dimension}"]
        for name, r, m in zip(ring.names, fan.rays, self.ray_data.multiplicities):
            extra = f" (multiplicity {m})" if m != 1 else ""
            out.append(f"ray {name}: ({','.join(str(x) for x in r)}){extra}")
        for c in fan.max_cones:
            out.append("cone {" + ", ".join(ring.names[i] for i in c) + "}")
        out.append(f"complete: {'yes' if fan.complete else 'no'}")
        if not self.polyhedron.bounded:
            out.append("polyhedron unbounded; recession rays: " + " ".join(
                "(" + ",".join(str(x) for x in r) + ")" for r in self.polyhedron.recession))
        for c in fan.nonsimplicial:
            out.append("non-simplicial cone {" + ", ".join(ring.names[i] for i in c) + "}")
        out.append(f"irrelevant ideal: {self.ideal}")
        free, tors = self.cokernel
        out.append(f"class group from the lattice: rank {free}, torsion "
                   + (" ".join(f"Z/{t}" for t in tors) if tors else "none"))
        return out


def reconstruct(ring, alphas=None):
    data = rays_from_grading(ring)
    fan, P = normal_fan(data.rays, alphas)
    return Reconstruction(data, fan, P, irrelevant_ideal(fan, ring),
                          cokernel_invariants(data.kernel_basis))


def anticanonical_class(ring):
    """``beta_0 = sum deg x_i``."""
    total = ring.zero_degree()
    for d in ring.degrees:
        total = total + d
    return total


def divisor_representative(ring, c):
    """Integers ``a`` with ``sum a_i deg x_i = c``."""
    A_free, A_tors = weight_matrices(ring)
    moduli = ring.group.moduli
    t = len(moduli)
    top = A_free.hstack(Matrix.zeros(A_free.shape[0], t))
    bottom = A_tors.hstack(Matrix([[moduli[i] if i == j else 0 for j in range(t)]
                                   for i in range(t)], t))
    sol = solve_integer(top.stack(bottom), list(c.free) + list(c.torsion))
    if sol is None:
        raise NoRepresentativeError(f"no torus-invariant divisor has class {c}")
    return tuple(sol[:ring.nvars])


def divisor_polytope(fan, ring, c):
    """``P_D = {m : <m, a_i> >= -a_i}`` for a representative ``D = sum a_i D_i`` of ``c``."""
    a = divisor_representative(ring, c)
    return polyhedron(fan.rays, [-x for x in a])


def nef_check(fan, ring, c):
    """Per-cone test: ``m_sigma`` matching ``D`` on ``sigma`` satisfies every inequality."""
    if not fan.complete:
        raise HypothesisError("nef test needs a complete fan")
    if fan.nonsimplicial:
        raise HypothesisError("nef test needs a simplicial fan")
    a = divisor_representative(ring, c)
    for cone in fan.max_cones:
        M = Matrix([fan.rays[i] for i in cone], fan.dimension)
        m = inverse(M).apply([-a[i] for i in cone])
        if any(_dot(m, r) < -ai for r, ai in zip(fan.rays, a)):
            return False
    return True


def gl_equivalent(rays1, rays2):
    """A unimodular ``T`` with ``T r1_i = r2_i`` for all ``i``, or ``None``."""
    rays1 = [tuple(r) for r in rays1]
    rays2 = [tuple(r) for r in rays2]
    if len(rays1) != len(rays2) or not rays1:
        return None
    d = len(rays1[0])
    for subset in itertools.combinations(range(len(rays1)), d):
        R1 = Matrix.from_columns([rays1[i] for i in subset], d)
        if determinant(R1) == 0:
            continue
        R2 = Matrix.from_columns([rays2[i] for i in subset], d)
        T = R2 @ inverse(R1)
        if any(Fraction(T[i, j]).denominator != 1 for i in range(d) for j in range(d)):
            return None
        if abs(determinant(T)) != 1:
            return None
        if all(T.apply(r1) == tuple(Fraction(x) for x in r2) for r1, r2 in zip(rays1, rays2)):
            return Matrix([[int(T[i, j]) for j in range(d)] for i in range(d)], d)
        return None
    return None


@dataclass
class CISocleReport:
    omega: object
    beta0: object
    status: str
    h_omega: int = None
    annihilated_by: dict = field(default_factory=dict)
    h_shifted: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)
    gorenstein: object = None
    notes: list = field(default_factory=list)

    def lines(self, ring):
        out = [f"beta_0 = {self.beta0}", f"omega = sum deg f_i - beta_0 = {self.omega}",
               f"quotient: {self.status}"]
        if self.h_omega is not None:
            out.append(f"dim A_omega = {self.h_omega}")
            for name, ok in self.annihilated_by.items():
                out.append(f"{name} * A_omega = 0: {'yes' if ok else 'no'}")
            for name, h in self.h_shifted.items():
                out.append(f"dim A_(omega + deg {name}) = {h}")
        for name, value in self.hypotheses.items():
            out.append(f"hypothesis {name}: {value}")
        if self.gorenstein is not None:
            g = self.gorenstein
            out.append("Cox-Gorenstein: " + (f"yes, socle degree {g.omega}" if g.is_gorenstein
                                             else "no"))
        out.extend(self.notes)
        return out


def _subset_sums(degrees):
    out = []
    for j in range(1, len(degrees) + 1):
        for subset in itertools.combinations(degrees, j):
            total = subset[0]
            for d in subset[1:]:
                total = total + d
            if total not in out:
                out.append(total)
    return out


def ci_socle_check(ring, forms, fan=None, cap=None):
    """Socle checks for ``S/(f_0, ..., f_d)`` at ``omega = sum deg f_i - beta_0``.

    Nef and full-dimensional-polytope hypotheses are tested where possible; the
    hypothesis that the forms have no common zero on the toric variety is not
    decided and is reported as assumed.
    """
    if fan is None:
        fan = reconstruct(ring).fan
    degrees = [f.require_homogeneous() for f in forms]
    beta0 = anticanonical_class(ring)
    omega = ring.zero_degree()
    for d in degrees:
        omega = omega + d
    omega = omega - beta0
    I = IdealPresentation(ring, forms)
    support = artinian_certify(I, cap)
    report = CISocleReport(omega, beta0, support.status)
    if len(forms) != fan.dimension + 1:
        report.notes.append(f"note: {len(forms)} forms for a fan of dimension "
                            f"{fan.dimension} (expected {fan.dimension + 1})")
    if fan.complete and not fan.nonsimplicial:
        nef = []
        for d in degrees:
            try:
                nef.append(nef_check(fan, ring, d))
            except NoRepresentativeError:
                nef.append(False)
        report.hypotheses["all form degrees nef"] = "verified" if all(nef) else "fails"
        full = []
        for eta in _subset_sums(degrees):
            try:
                P = divisor_polytope(fan, ring, eta)
                full.append(P.dimension == fan.dimension)
            except NoRepresentativeError:
                full.append(False)
        report.hypotheses["P_eta full-dimensional for all subset sums"] = \
            "verified" if all(full) else "fails"
    else:
        report.hypotheses["all form degrees nef"] = "not checked (fan not complete simplicial)"
    report.hypotheses["no common zero on the toric variety"] = "assumed (not decided)"
    if not support.artinian:
        report.notes.append(f"the quotient is not Artinian ({support.reason or support.status});"
                            " the socle statement does not apply")
        return report
    report.h_omega = support.h(omega)
    for i, x in enumerate(ring.variables()):
        M = multiplication_matrix(I, x, omega)
        report.annihilated_by[ring.names[i]] = M.is_zero()
        report.h_shifted[ring.names[i]] = support.h(omega + ring.degrees[i])
    if ring.group.free_rank == 1:
        report.gorenstein = is_cox_gorenstein(support)
        if report.gorenstein.is_gorenstein and report.gorenstein.omega != omega:
            report.notes.append("socle degree differs from omega")
    return report
