"""G-graded polynomial rings over Q, sparse polynomials and the apolarity action.

A ring plays one of two roles: ``S`` (polynomials ``x_i``) or ``Q``
(differential operators ``X_i = d/dx_i`` carrying the same degrees). ``Q``
acts on ``S`` by honest differentiation, lowering degrees.
"""

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import perm

from .errors import (NotHomogeneousError, RingMismatchError, SpecParseError,
                     UnsupportedGradingError)
from .exact import Matrix
from .grading import GroupElement, GroupSpec, OrderSpec, find_positivity_certificate, leq

__all__ = [
    "GradedRing",
    "Polynomial",
    "monomials_of_degree",
    "monomial_sort_key",
    "apply_diff",
    "catalecticant",
    "parse_polynomial",
]


def monomial_sort_key(exps):
    """Graded-lex order, largest first: higher total degree, then lex-descending."""
    return (-sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class GradedRing:
    names: tuple
    degrees: tuple
    group: GroupSpec
    order: OrderSpec = OrderSpec()
    role: str = "S"
    dual_names: tuple = None
    _cache: dict = field(default_factory=dict, init=False, compare=False,
                         repr=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False,
                                  compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if not self.names:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if len(self.degrees) != len(self.names):
            raise ValueError("one degree per variable is required")
        for d in self.degrees:
            if not isinstance(d, GroupElement) or d.group != self.group:
                raise ValueError(f"degree {d} is not an element of {self.group}")
        if self.role not in ("S", "Q"):
            raise ValueError("role must be 'S' or 'Q'")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"invalid variable name {n!r}")
        if self.dual_names is None:
            object.__setattr__(self, "dual_names", _default_dual_names(self.names, self.role))
        else:
            object.__setattr__(self, "dual_names", tuple(self.dual_names))

    @classmethod
    def build(cls, names, degrees, group, order=None, role="S"):
        """Convenience constructor accepting degrees as text or tuples."""
        degs = []
        for d in degrees:
            if isinstance(d, GroupElement):
                degs.append(d)
            elif isinstance(d, str):
                degs.append(group.parse(d))
            else:
                d = tuple(d)
                degs.append(group.element(d[:group.free_rank], d[group.free_rank:]))
        names = names.split() if isinstance(names, str) else names
        return cls(tuple(names), tuple(degs), group, order or OrderSpec(), role)

    @property
    def nvars(self):
        return len(self.names)

    @cached_property
    def certificate(self):
        return find_positivity_certificate(self.degrees)

    def require_certificate(self):
        if self.certificate is None:
            raise UnsupportedGradingError(
                "the grading admits no positivity certificate; graded pieces "
                "may be infinite-dimensional")
        return self.certificate

    def phi(self, g):
        return self.require_certificate()(g)

    def zero_degree(self):
        return self.group.zero()

    def degree_of(self, exps):
        g = self.group.zero()
        for e, d in zip(exps, self.degrees):
            if e:
                g = g + e * d
        return g

    def leq(self, g, h):
        return leq(g, h, self.order, self)

    def dual(self):
        """The ring playing the other role (``S <-> Q``) with the same degrees."""
        names = self.dual_names or _default_dual_names(self.names, self.role)
        return GradedRing(names, self.degrees, self.group, self.order,
                          "Q" if self.role == "S" else "S", self.names)

    def same_grading(self, other):
        return self.degrees == other.degrees and self.group == other.group

    def var(self, i):
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): 1})

    def variables(self):
        return [self.var(i) for i in range(self.nvars)]

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: 1})

    def zero(self):
        return Polynomial(self, {})

    def poly(self, text):
        return parse_polynomial(self, text)

    def monomials_of_degree(self, g):
        return monomials_of_degree(self, g)

    def in_monoid(self, g):
        """Whether ``g`` is a nonnegative integer combination of variable degrees."""
        return bool(_enumerate(self, g, first_only=True))

    def __str__(self):
        vs = " ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"{self.role}[{vs}] over {self.group}"


def _default_dual_names(names, role):
    conv = str.upper if role == "S" else str.lower
    mapped = tuple(conv(n) for n in names)
    if len(set(mapped)) == len(mapped) and not set(mapped) & set(names):
        return mapped
    if role == "S":
        return tuple("D" + n for n in names)
    return tuple(n[1:] if n.startswith("D") else n + "_" for n in names)


def _enumerate(ring, g, first_only=False):
    cert = ring.require_certificate()
    if g.group != ring.group:
        raise RingMismatchError("degree from a different group")
    n = ring.nvars
    weights = [cert(d) for d in ring.degrees]
    frees = [d.free for d in ring.degrees]
    tors = [d.torsion for d in ring.degrees]
    moduli = ring.group.moduli
    out = []

    def rec(i, free_rem, tors_rem, budget, prefix):
        if i == n - 1:
            e = budget / weights[i]
            if e.denominator != 1:
                return
            e = int(e)
            if all(r == e * x for r, x in zip(free_rem, frees[i])) and \
                    all((r - e * x) % m == 0 for r, x, m in zip(tors_rem, tors[i], moduli)):
                out.append(tuple(prefix) + (e,))
            return
        top = int(budget // weights[i])
        for e in range(top, -1, -1):
            rec(i + 1,
                tuple(r - e * x for r, x in zip(free_rem, frees[i])),
                tuple(r - e * x for r, x in zip(tors_rem, tors[i])),
                budget - e * weights[i], prefix + [e])
            if first_only and out:
                return

    budget = cert(g)
    if budget >= 0:
        rec(0, g.free, g.torsion, budget, [])
    return out


def monomials_of_degree(ring, g):
    """Exponent vectors of all monomials of degree ``g``, in graded-lex order."""
    key = ("monomials", g)
    cached = ring._cache.get(key)
    if cached is not None:
        return cached
    result = tuple(sorted(_enumerate(ring, g), key=monomial_sort_key))
    with ring._lock:
        ring._cache.setdefault(key, result)
    return result


class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Immutable; ``degree`` is the common degree of all terms, or ``None`` when
    the polynomial is not homogeneous (or is zero).
    """

    __slots__ = ("ring", "_terms", "degree", "homogeneous", "_hash")

    def __init__(self, ring, terms):
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if c:
                m = tuple(int(x) for x in m)
                if len(m) != ring.nvars or any(x < 0 for x in m):
                    raise ValueError(f"bad exponent vector {m}")
                clean[m] = c
        self.ring = ring
        self._terms = clean
        degs = {ring.degree_of(m) for m in clean}
        self.homogeneous = len(degs) <= 1
        self.degree = next(iter(degs)) if len(degs) == 1 else None
        self._hash = None

    @classmethod
    def monomial(cls, ring, exps, coefficient=1):
        return cls(ring, {tuple(exps): coefficient})

    @classmethod
    def from_vector(cls, ring, monomials, vector):
        return cls(ring, {m: c for m, c in zip(monomials, vector) if c})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return sorted(self._terms, key=monomial_sort_key)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self._terms

    def require_homogeneous(self):
        if not self.homogeneous or self.degree is None:
            raise NotHomogeneousError(f"{self} is not a nonzero homogeneous element")
        return self.degree

    def coordinates(self, monomials):
        """Coefficient vector on ``monomials`` (terms outside the list must be absent)."""
        index = {m: i for i, m in enumerate(monomials)}
        v = [Fraction(0)] * len(monomials)
        for m, c in self._terms.items():
            if m not in index:
                raise ValueError(f"monomial {m} outside the given basis")
            v[index[m]] = c
        return v

    def _same(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial(self.ring, {(0,) * self.ring.nvars: other})
        elif other.ring != self.ring:
            raise RingMismatchError("polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._same(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, {m: c * other for m, c in self._terms.items()})
        other = self._same(other)
        t = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial(self.ring, {(0,) * self.ring.nvars: other})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point):
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term *= x ** e
            total += term
        return total

    def constant_value(self):
        """The value of a polynomial known to be constant."""
        if any(any(m) for m in self._terms):
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def to_text(self):
        return format_polynomial(self)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(p):
    if p.is_zero():
        return "0"
    out = []
    for m in p.monomials():
        c = p.coefficient(m)
        factors = [name if e == 1 else f"{name}^{e}"
                   for name, e in zip(p.ring.names, m) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_polynomial(ring, text):
    """Parse text such as ``3/2*x^2*u - y^2*v`` over ``ring``.

    Supports ``+ - * ^`` and parentheses; ``*`` may be omitted between factors
    and runs of declared single names (``xyu``) are split greedily.
    """
    tokens = []
    pos = 0
    text = str(text)
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        num, ident, op = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            n, _, d = num.partition("/")
            if d and int(d) == 0:
                raise SpecParseError(f"zero denominator in {text!r}", f"column {col}")
            tokens.append(("num", Fraction(int(n), int(d or 1)), col))
        elif ident is not None:
            for name in _split_identifier(ring, ident, text, col):
                tokens.append(("var", ring.names.index(name), col))
        elif op in "+-*^()":
            tokens.append((op, None, col))
        else:
            raise SpecParseError(f"unexpected character {op!r} in {text!r}", f"column {col}")
        pos = m.end()
    parser = _Parser(ring, tokens, text)
    result = parser.expr()
    if parser.i != len(tokens):
        tok = tokens[parser.i]
        raise SpecParseError(f"unexpected token {tok[0]!r} in {text!r}", f"column {tok[2]}")
    return result


def _split_identifier(ring, ident, text, col):
    if ident in ring.names:
        return [ident]
    names = sorted(ring.names, key=len, reverse=True)
    out = []
    i = 0
    while i < len(ident):
        for n in names:
            if ident.startswith(n, i):
                out.append(n)
                i += len(n)
                break
        else:
            raise SpecParseError(f"unknown variable {ident!r} in {text!r} "
                                 f"(declared: {', '.join(ring.names)})", f"column {col}")
    return out


class _Parser:
    def __init__(self, ring, tokens, text):
        self.ring = ring
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def fail(self, what):
        col = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text) + 1
        raise SpecParseError(f"{what} in {self.text!r}", f"column {col}")

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        result = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.i += 1
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while True:
            if self.peek() == "*":
                self.i += 1
                result = result * self.factor()
            elif self.peek() in ("num", "var", "("):
                result = result * self.factor()
            else:
                return result

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            if self.peek() != "num" or self.tokens[self.i][1].denominator != 1:
                self.fail("expected an integer exponent")
            k = int(self.tokens[self.i][1])
            self.i += 1
            base = base ** k
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            v = self.tokens[self.i][1]
            self.i += 1
            return Polynomial(self.ring, {(0,) * self.ring.nvars: v})
        if kind == "var":
            idx = self.tokens[self.i][1]
            self.i += 1
            return self.ring.var(idx)
        if kind == "(":
            self.i += 1
            inner = self.expr()
            if self.peek() != ")":
                self.fail("missing ')'")
            self.i += 1
            return inner
        if kind == "-":
            self.i += 1
            return -self.atom()
        self.fail("expected a number, variable or '('")


def _check_pairing(alpha, f):
    if alpha.ring.role != "Q" or f.ring.role != "S":
        raise RingMismatchError("apply_diff expects an operator in Q and a polynomial in S")
    if not alpha.ring.same_grading(f.ring):
        raise RingMismatchError("operator and polynomial rings have different gradings")


def apply_diff(alpha, f, contraction=False):
    """Apply the differential operator ``alpha`` to ``f``.

    ``X^a`` sends ``x^c`` to ``prod c_i!/(c_i - a_i)! * x^(c - a)`` when
    ``a <= c`` and to 0 otherwise. With ``contraction=True`` the factorial
    factor is dropped (the divided-power convention).
    """
    _check_pairing(alpha, f)
    out = {}
    for a, ca in alpha.items():
        for c, cf in f.items():
            if any(ai > ci for ai, ci in zip(a, c)):
                continue
            coef = ca * cf
            if not contraction:
                for ai, ci in zip(a, c):
                    if ai:
                        coef *= perm(ci, ai)
            m = tuple(ci - ai for ai, ci in zip(a, c))
            out[m] = out.get(m, 0) + coef
    return Polynomial(f.ring, out)


def catalecticant(f, g, contraction=False):
    """Matrix of ``Q_g -> S_(deg f - g)``, ``alpha -> alpha(f)``.

    Rows follow ``monomials_of_degree(S, deg f - g)``, columns follow
    ``monomials_of_degree(Q, g)``; the kernel is ``Ann(f)_g`` and the rank is
    the Hilbert function of ``Q/Ann(f)`` at ``g``.
    """
    omega = f.require_homogeneous()
    Q = f.ring.dual()
    cols = monomials_of_degree(Q, g)
    rows = monomials_of_degree(f.ring, omega - g)
    index = {m: i for i, m in enumerate(rows)}
    data = [[Fraction(0)] * len(cols) for _ in rows]
    for j, a in enumerate(cols):
        d = apply_diff(Polynomial(Q, {a: 1}), f, contraction)
        for m, c in d.items():
            data[index[m]][j] = c
    return Matrix(data, len(cols))
