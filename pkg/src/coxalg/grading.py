"""Grading groups ``Z^r + Z/m_1 + ... + Z/m_N``, their elements and partial orders.

Degrees are written in text as ``(a,b;c~m,d~k)``: free coordinates, a
semicolon, then torsion residues with their moduli. A purely free degree
drops the semicolon part, e.g. ``(4,1)``.
"""

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GroupMismatchError, SpecParseError, UnsupportedGradingError

__all__ = [
    "GroupSpec",
    "GroupElement",
    "OrderSpec",
    "PositivityCertificate",
    "group_add",
    "group_sub",
    "group_neg",
    "group_scale",
    "find_positivity_certificate",
    "leq",
    "cover_relations",
]


@dataclass(frozen=True)
class GroupSpec:
    free_rank: int
    moduli: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(m < 2 for m in self.moduli):
            raise ValueError("torsion moduli must be >= 2")

    def element(self, free=(), torsion=None):
        if torsion is None:
            torsion = (0,) * len(self.moduli)
        return GroupElement(self, tuple(free), tuple(torsion))

    def zero(self):
        return self.element((0,) * self.free_rank)

    def parse(self, text):
        return parse_degree(self, text)

    def __str__(self):
        parts = {0: [], 1: ["Z"]}.get(self.free_rank, [f"Z^{self.free_rank}"])
        parts += [f"Z/{m}" for m in self.moduli]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec = field(repr=False)
    free: tuple
    torsion: tuple = ()

    def __post_init__(self):
        g = self.group
        free = tuple(int(x) for x in self.free)
        tors = tuple(int(x) for x in self.torsion)
        if len(free) != g.free_rank or len(tors) != len(g.moduli):
            raise GroupMismatchError(
                f"degree {free};{tors} does not fit the group {g}")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "torsion", tuple(x % m for x, m in zip(tors, g.moduli)))

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatchError(f"cannot combine degrees of {self.group} and "
                                     f"{getattr(other, 'group', other)}")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.group,
                            tuple(a + b for a, b in zip(self.free, other.free)),
                            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.group,
                            tuple(a - b for a, b in zip(self.free, other.free)),
                            tuple(a - b for a, b in zip(self.torsion, other.torsion)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.free),
                            tuple(-a for a in self.torsion))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple(k * a for a in self.free),
                            tuple(k * a for a in self.torsion))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.free) and not any(self.torsion)

    def key(self):
        """Sort key: free coordinates, then torsion residues."""
        return (self.free, self.torsion)

    def __str__(self):
        free = ",".join(str(x) for x in self.free)
        if not self.group.moduli:
            return f"({free})"
        tors = ",".join(f"{r}~{m}" for r, m in zip(self.torsion, self.group.moduli))
        return f"({free};{tors})"


def group_add(a, b):
    return a + b


def group_sub(a, b):
    return a - b


def group_neg(a):
    return -a


def group_scale(k, a):
    return k * a


_INT = r"\s*[+-]?\d+\s*"


def parse_degree(group, text, location=None):
    """Parse ``(a,b;c~m)`` (parentheses optional) into an element of ``group``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    free_s, _, tors_s = s.partition(";")
    try:
        free = [int(x) for x in free_s.split(",")] if free_s.strip() else []
        torsion = []
        if tors_s.strip():
            for item in tors_s.split(","):
                r, _, m = item.partition("~")
                if not re.fullmatch(_INT, r) or (m and not re.fullmatch(_INT, m)):
                    raise ValueError(item)
                if m and int(m) != group.moduli[len(torsion)]:
                    raise SpecParseError(
                        f"modulus {int(m)} does not match group modulus "
                        f"{group.moduli[len(torsion)]} in {text!r}", location)
                torsion.append(int(r))
        elif group.moduli and len(free) == group.free_rank + len(group.moduli):
            # flat form "(a,b,c)" listing torsion residues after the free part
            free, torsion = free[:group.free_rank], free[group.free_rank:]
    except (ValueError, IndexError) as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise SpecParseError(f"malformed degree {text!r}", location) from None
    if len(free) != group.free_rank or len(torsion) != len(group.moduli):
        raise SpecParseError(f"degree {text!r} does not fit the group {group}", location)
    return GroupElement(group, tuple(free), tuple(torsion))


@dataclass(frozen=True)
class OrderSpec:
    """Partial-order configuration.

    ``semigroup`` (default): ``g <= h`` iff ``h - g`` lies in the monoid
    generated by the variable degrees. ``functional``: ``g <= h`` iff every
    listed functional is nonnegative on the free part of ``h - g``; torsion is
    ignored, so this is only a preorder when the group has torsion.
    """

    mode: str = "semigroup"
    functionals: tuple = ()

    def __post_init__(self):
        if self.mode not in ("semigroup", "functional"):
            raise ValueError(f"unknown order mode {self.mode!r}")
        fs = tuple(tuple(Fraction(x) for x in f) for f in self.functionals)
        object.__setattr__(self, "functionals", fs)
        if self.mode == "functional" and not fs:
            raise ValueError("functional order needs at least one functional")

    def is_preorder_only(self, group):
        """True when the order can fail antisymmetry on ``group``."""
        if self.mode == "functional":
            if group.moduli:
                return True
            # functionals that do not separate points of Z^r
            from .exact import Matrix, rank
            return rank(Matrix(self.functionals, group.free_rank)) < group.free_rank
        return False


@dataclass(frozen=True)
class PositivityCertificate:
    """A homomorphism ``G -> Q`` (free part only) positive on every variable degree."""

    phi: tuple

    def __call__(self, g):
        return sum((Fraction(a) * b for a, b in zip(self.phi, g.free)), Fraction(0))


def find_positivity_certificate(degrees, search_radius=4):
    """Find ``phi`` with ``phi(d) > 0`` for every degree in ``degrees``.

    Small integer vectors are tried first (ordered by max-norm, then
    lexicographically) so the answer is deterministic and readable; a linear
    program over the rationals is the fallback. Returns ``None`` when no
    certificate exists.
    """
    degrees = list(degrees)
    if not degrees:
        return None
    rho = degrees[0].group.free_rank
    if rho == 0:
        return None
    frees = [d.free for d in degrees]
    if any(not any(f) for f in frees):
        return None
    for radius in range(1, search_radius + 1):
        for cand in itertools.product(range(-radius, radius + 1), repeat=rho):
            if max(abs(c) for c in cand) != radius:
                continue
            if all(sum(c * x for c, x in zip(cand, f)) > 0 for f in frees):
                return PositivityCertificate(tuple(Fraction(c) for c in cand))
    return _lp_certificate(frees, rho)


def _lp_certificate(frees, rho):
    # maximise t subject to phi.f >= t, -1 <= phi_i <= 1; feasible iff t > 0
    from scipy.optimize import linprog

    c = [0.0] * rho + [-1.0]
    A = [[-x for x in f] + [1.0] for f in frees]
    res = linprog(c, A_ub=A, b_ub=[0.0] * len(frees),
                  bounds=[(-1, 1)] * rho + [(None, 1)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        return None
    for denom in (10, 100, 1000, 10**6):
        phi = tuple(Fraction(x).limit_denominator(denom) for x in res.x[:rho])
        if all(sum(p * x for p, x in zip(phi, f)) > 0 for f in frees):
            return PositivityCertificate(phi)
    return None


def leq(g, h, order, ring):
    """Decide ``g <= h`` under ``order`` for degrees of ``ring``."""
    g._check(h)
    if order.mode == "functional":
        diff = h - g
        return all(sum(a * b for a, b in zip(f, diff.free)) >= 0
                   for f in order.functionals)
    if ring.certificate is None:
        raise UnsupportedGradingError(
            "semigroup order needs a positivity certificate for the grading")
    return ring.in_monoid(h - g)


def cover_relations(degrees, order, ring):
    """Pairs ``(g, h)`` with ``g < h`` and nothing of ``degrees`` strictly between.

    Strictness means ``g <= h`` and not ``h <= g``, which keeps the relation
    meaningful when the order is only a preorder.
    """
    degrees = list(degrees)
    n = len(degrees)
    le = [[leq(degrees[i], degrees[j], order, ring) for j in range(n)] for i in range(n)]
    lt = [[le[i][j] and not le[j][i] for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(n)):
                edges.append((degrees[i], degrees[j]))
    return edges
