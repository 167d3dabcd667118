"""Sparse multivariate polynomials over exact rationals.

Polynomials are immutable values over a fixed variable table.  A table pairs
every primal variable with a dual variable; a polynomial is tagged with the
ring it lives in (PRIMAL or DUAL).  Coefficients are `fractions.Fraction`, so
all arithmetic is exact.  The canonical term order used everywhere (printing,
coefficient vectors, matrix columns) is graded lexicographic: higher total
degree first, then lexicographically by exponent tuple, descending.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

PRIMAL = "primal"
DUAL = "dual"

Monomial = tuple  # exponent tuple, one entry per table variable


class TableMismatchError(ValueError):
    """Raised when operands live over different variable tables or rings."""


@dataclass(frozen=True)
class VarTable:
    """Ordered primal variable names paired with their dual names."""

    primal: tuple
    dual: tuple

    def __post_init__(self):
        if len(self.primal) != len(self.dual):
            raise ValueError("primal and dual name lists differ in length")
        names = list(self.primal) + list(self.dual)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique across both rings")

    @staticmethod
    def make(primal, dual=None) -> "VarTable":
        primal = tuple(primal)
        if dual is None:
            dual = tuple("d_" + v for v in primal)
        return VarTable(primal, tuple(dual))

    @property
    def n(self) -> int:
        return len(self.primal)

    def names(self, ring: str) -> tuple:
        return self.primal if ring == PRIMAL else self.dual

    def index(self, name: str, ring: str) -> int:
        return self.names(ring).index(name)


def monomials(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent tuples of the given total degree, descending lex order."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            yield (e,) + rest


def monomial_count(nvars: int, degree: int) -> int:
    from math import comb

    return comb(nvars + degree - 1, degree)


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c)!r}")


class Poly:
    """Immutable sparse polynomial over a variable table.

    `terms` maps exponent tuples to nonzero Fraction coefficients.  Zero
    coefficients are never stored, so equality of term maps is equality of
    polynomials.
    """

    __slots__ = ("table", "ring", "terms")

    def __init__(self, table: VarTable, ring: str, terms: Mapping):
        if ring not in (PRIMAL, DUAL):
            raise ValueError(f"unknown ring tag {ring!r}")
        clean = {}
        n = table.n
        for mono, coeff in terms.items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            mono = tuple(mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono} for {n} variables")
            clean[mono] = coeff
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(table: VarTable, ring: str = PRIMAL) -> "Poly":
        return Poly(table, ring, {})

    @staticmethod
    def constant(table: VarTable, c, ring: str = PRIMAL) -> "Poly":
        return Poly(table, ring, {(0,) * table.n: c})

    @staticmethod
    def variable(table: VarTable, i: int, ring: str = PRIMAL) -> "Poly":
        e = [0] * table.n
        e[i] = 1
        return Poly(table, ring, {tuple(e): 1})

    @staticmethod
    def from_vector(table: VarTable, ring: str, degree: int, vec: Sequence) -> "Poly":
        """Inverse of coefficient_vector for a fixed degree."""
        terms = {}
        for mono, c in zip(monomials(table.n, degree), vec):
            if c != 0:
                terms[mono] = c
        return Poly(table, ring, terms)

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other: "Poly"):
        if self.table != other.table or self.ring != other.ring:
            raise TableMismatchError("operands live over different tables or rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, Fraction(0)) + c
            if s == 0:
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return Poly(self.table, self.ring, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.table, self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Poly(self.table, self.ring, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if c == 0:
            return Poly.zero(self.table, self.ring)
        return Poly(self.table, self.ring, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.table, 1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.table == other.table
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.table, self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Max total degree of a term; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_degree(self):
        """The common degree of all terms, or None if mixed or zero."""
        degs = {sum(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def graded_component(self, d: int) -> "Poly":
        return Poly(
            self.table, self.ring, {m: c for m, c in self.terms.items() if sum(m) == d}
        )

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self):
        """(monomial, coefficient) pairs in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coefficient_vector(self, degree: int) -> list:
        """Coefficients aligned with monomials(n, degree); requires all terms
        of that degree (use graded_component first otherwise)."""
        return [self.terms.get(m, Fraction(0)) for m in monomials(self.table.n, degree)]

    def support_vars(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- substitution --------------------------------------------------------

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace variable i by images[i]; images must be homogeneous of
        degree 1 (zero allowed) over a common target table and ring."""
        if len(images) != self.table.n:
            raise ValueError("one image per variable required")
        target = None
        for img in images:
            if img.is_zero():
                continue
            if img.homogeneous_degree() != 1:
                raise ValueError("substitution images must be linear forms")
            if target is None:
                target = img
            elif img.table != target.table or img.ring != target.ring:
                raise TableMismatchError("images live over different tables")
        if target is None:
            # every image is zero: need some table to land in; reuse our own
            target_table, target_ring = self.table, self.ring
        else:
            target_table, target_ring = target.table, target.ring
        out = Poly.zero(target_table, target_ring)
        power_cache = {}
        for mono, c in self.terms.items():
            term = Poly.constant(target_table, c, target_ring)
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                key = (i, e)
                if key not in power_cache:
                    power_cache[key] = images[i] ** e
                term = term * power_cache[key]
            out = out + term
        return out

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.table.names(self.ring)
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            body = "*".join(factors)
            if not factors:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.ring}: {self})"


def substitute_linear(p: Poly, images: Sequence[Poly]) -> Poly:
    """Functional form of Poly.substitute."""
    return p.substitute(images)


def linear_form(table: VarTable, coeffs: Sequence, ring: str = PRIMAL) -> Poly:
    """Sum of coeffs[i] * variable_i."""
    terms = {}
    for i, c in enumerate(coeffs):
        if c != 0:
            e = [0] * table.n
            e[i] = 1
            terms[tuple(e)] = c
    return Poly(table, ring, terms)


def linear_coeffs(p: Poly) -> list:
    """Coefficient vector of a linear form (degree <= 1, no constant)."""
    if not p.is_zero() and p.homogeneous_degree() != 1:
        raise ValueError("not a linear form")
    return p.coefficient_vector(1)


# -- univariate coefficient-list helpers (used by square-freeness tests and
#    parametric eliminations; lists are ascending in the variable) -----------


def uni_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def uni_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return uni_trim(out)


def uni_scale(a: list, c) -> list:
    c = _as_fraction(c)
    if c == 0:
        return []
    return [x * c for x in a]


def uni_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return uni_trim(out)


def uni_sub(a: list, b: list) -> list:
    return uni_add(a, uni_scale(b, -1))


def uni_divmod(a: list, b: list) -> tuple:
    """Quotient and remainder of a by b (b nonzero)."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        q = a[-1] / lead
        shift = len(a) - 1 - db
        quot[shift] = q
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        uni_trim(a)
    return uni_trim(quot), a


def uni_rem(a: list, b: list) -> list:
    return uni_divmod(a, b)[1]


def uni_gcd(a: list, b: list) -> list:
    """Monic gcd of univariate coefficient lists (empty list for gcd(0,0))."""
    a, b = uni_trim(list(a)), uni_trim(list(b))
    while b:
        a, b = b, uni_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def uni_derivative(a: list) -> list:
    return uni_trim([c * i for i, c in enumerate(a)][1:])
