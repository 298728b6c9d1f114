"""Homogeneous multivariate polynomials over F_p with monomial orders.

Monomials are exponent tuples. Every order maps a monomial to an integer key
so that comparing keys compares monomials; the Groebner kernels lean on this.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import add
from typing import Iterable, Mapping, Sequence

from .field import DEFAULT_PRIME, FieldElement, check_modulus, inverse_mod

# exponents must stay below this; keys pack one exponent per digit
EXP_BASE = 64


class Monomial(tuple):
    """Exponent vector with a cached total degree."""

    @property
    def degree(self) -> int:
        return sum(self)

    def divides(self, other: Sequence[int]) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other):
        return Monomial(map(add, self, other))


def _revlex_code(exps: Sequence[int]) -> int:
    # the last variable is the most significant digit; smaller exponent wins
    code = 0
    for e in reversed(exps):
        if e >= EXP_BASE:
            raise OverflowError("exponent too large for packed order keys")
        code = code * EXP_BASE + (EXP_BASE - 1 - e)
    return code


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: 'grevlex', 'lex', or 'elim' (block order eliminating the first k variables).

    The elimination order compares the first k variables by grevlex, then
    breaks ties with grevlex on the remaining ones.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "elim" and self.k < 0:
            raise ValueError("elimination block size must be nonnegative")

    @classmethod
    def grevlex(cls) -> TermOrder:
        return cls("grevlex")

    @classmethod
    def lex(cls) -> TermOrder:
        return cls("lex")

    @classmethod
    def elimination(cls, k: int) -> TermOrder:
        return cls("elim", k)

    def key(self, exps: Sequence[int]) -> int:
        n = len(exps)
        if self.kind == "grevlex":
            return sum(exps) * EXP_BASE**n + _revlex_code(exps)
        if self.kind == "lex":
            code = 0
            for e in exps:
                if e >= EXP_BASE:
                    raise OverflowError("exponent too large for packed order keys")
                code = code * EXP_BASE + e
            return code
        head, tail = exps[: self.k], exps[self.k :]
        tail_key = sum(tail) * EXP_BASE ** len(tail) + _revlex_code(tail)
        head_key = sum(head) * EXP_BASE ** len(head) + _revlex_code(head)
        return head_key * EXP_BASE ** (len(tail) + 1) + tail_key

    def compare(self, u: Sequence[int], v: Sequence[int]) -> int:
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)


class PolynomialRing:
    """F_p[x_0..x_{n-1}] with a term order and a grading by integer weights."""

    def __init__(
        self,
        nvars: int,
        p: int = DEFAULT_PRIME,
        order: TermOrder | None = None,
        names: Sequence[str] | None = None,
        weights: Sequence[int] | None = None,
    ):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        self.p = check_modulus(p)
        self.order = order or TermOrder.grevlex()
        if names is None:
            names = "xyzw" if nvars == 4 else [f"x{i}" for i in range(nvars)]
        self.names = tuple(names)
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        self._keys: dict[tuple[int, ...], int] = {}

    def signature(self):
        return (self.nvars, self.p, self.order, self.names, self.weights)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"PolynomialRing({','.join(self.names)}; p={self.p}, {self.order.kind})"

    def with_order(self, order: TermOrder) -> PolynomialRing:
        return PolynomialRing(self.nvars, self.p, order, self.names, self.weights)

    def key(self, exps: tuple[int, ...]) -> int:
        k = self._keys.get(exps)
        if k is None:
            k = self._keys[exps] = self.order.key(exps)
        return k

    def weighted_degree(self, exps: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i: int) -> Polynomial:
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): 1})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def linear_form(self, coeffs: Sequence[int]) -> Polynomial:
        if len(coeffs) != self.nvars:
            raise ValueError("coefficient vector has wrong length")
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * self.nvars
            exps[i] = 1
            terms[tuple(exps)] = c
        return Polynomial(self, terms)


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree d in nvars variables."""
    if d < 0:
        return []
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            out.append((e,) + rest)
    return out


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero residues."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping[tuple[int, ...], int]):
        p = ring.p
        self.ring = ring
        clean = {}
        for exps, c in terms.items():
            c = int(c) % p
            if c:
                if len(exps) != ring.nvars:
                    raise ValueError("exponent vector has wrong length")
                clean[tuple(exps)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, ring: PolynomialRing, terms: dict) -> Polynomial:
        # trusted constructor: terms already reduced and nonzero
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        return obj

    def coefficients(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    @property
    def terms(self) -> list[tuple[Monomial, int]]:
        """Terms sorted descending by the ring's order."""
        key = self.ring.key
        return [(Monomial(m), c) for m, c in sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degrees(self) -> set[int]:
        wd = self.ring.weighted_degree
        return {wd(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Degree of a homogeneous polynomial."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("degree is defined only for nonzero homogeneous polynomials")
        return degs.pop()

    def leading_term(self, order: TermOrder | None = None) -> tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.key if order is None or order == self.ring.order else order.key
        m = max(self._terms, key=key)
        return Monomial(m), self._terms[m]

    def variables(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, FieldElement):
            other = other.residue
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {m: p - c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c % p for m, v in self._terms.items()})

    def monic(self) -> Polynomial:
        _, lc = self.leading_term()
        return self.scale(inverse_mod(lc, self.ring.p))

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        p = self.ring.p
        parts = []
        for m, c in self.terms:
            sign = "+"
            if c > p // 2:
                sign, c = "-", p - c
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e
            )
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise ValueError("polynomials live in different rings")
    p = f.ring.p
    out: dict[tuple[int, ...], int] = {}
    for m1, c1 in f._terms.items():
        for m2, c2 in g._terms.items():
            m = tuple(map(add, m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return Polynomial._raw(f.ring, {m: c for m, c in out.items() if c})


def leading_term(f: Polynomial, order: TermOrder | None = None) -> tuple[Monomial, int]:
    return f.leading_term(order)


def sum_polys(ring: PolynomialRing, polys: Iterable[Polynomial]) -> Polynomial:
    out = ring.zero()
    for f in polys:
        out = out + f
    return out
