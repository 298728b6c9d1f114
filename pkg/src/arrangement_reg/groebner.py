"""Buchberger's algorithm, normal forms, elimination and ideal intersection.

The kernel works on module vectors: dicts mapping ``(component, exponents)``
to residues. Ideals are the rank-one case (component 0). The same kernel
drives the syzygy computation in :mod:`resolution`.
"""

from __future__ import annotations

import heapq
from operator import add, sub
from typing import Callable, Iterable, Sequence

from .field import inverse_mod
from .linalg import DenseMatrix, rank
from .polynomial import Polynomial, PolynomialRing, TermOrder, monomials_of_degree

Term = tuple  # (component, exponent tuple)
Vector = dict


class GroebnerKernel:
    """Homogeneous Buchberger over F_p for submodules of a free module.

    ``key`` maps a term to an int (larger = bigger in the module order) and
    ``degree`` maps a term to its degree in the grading the input is homogeneous for.
    """

    def __init__(self, p: int, key: Callable[[Term], int], degree: Callable[[Term], int],
                 product_criterion: bool = False):
        self.p = p
        self._key_fn = key
        self._degree = degree
        self._keys: dict[Term, int] = {}
        self._terms: dict[int, Term] = {}
        self.product_criterion = product_criterion

    def key(self, t: Term) -> int:
        k = self._keys.get(t)
        if k is None:
            k = self._keys[t] = self._key_fn(t)
            self._terms[k] = t
        return k

    def lead(self, f: Vector) -> Term:
        return max(f, key=self.key)

    def degree(self, f: Vector) -> int:
        return self._degree(next(iter(f)))

    def reduce(self, f: Vector, basis: Sequence[tuple], full: bool = True) -> Vector:
        """Remainder of f on division by basis entries ``(vector, lead, lead_coeff_inverse)``.

        With ``full=False`` stops at the first irreducible leading term.
        """
        p = self.p
        key = self.key
        terms = self._terms
        f = dict(f)
        heap = [-key(t) for t in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            t = terms[-heapq.heappop(heap)]
            c = f.pop(t, None)
            if c is None:
                continue
            comp, exps = t
            div = None
            for entry in basis:
                lc_, le = entry[1]
                if lc_ == comp and all(a <= b for a, b in zip(le, exps)):
                    div = entry
                    break
            if div is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            g, (_, ge), ginv = div
            coef = c * ginv % p
            shift = tuple(map(sub, exps, ge))
            for (gc, gx), gv in g.items():
                nt = (gc, tuple(map(add, gx, shift)))
                if nt == t:
                    continue
                old = f.get(nt)
                if old is None:
                    nv = -coef * gv % p
                    if nv:
                        f[nt] = nv
                        heapq.heappush(heap, -key(nt))
                else:
                    nv = (old - coef * gv) % p
                    if nv:
                        f[nt] = nv
                    else:
                        del f[nt]
        return rem

    def monic(self, f: Vector) -> Vector:
        p = self.p
        inv = inverse_mod(f[self.lead(f)], p)
        return {t: c * inv % p for t, c in f.items()}

    def spoly(self, f: Vector, ft: Term, g: Vector, gt: Term) -> Vector:
        """S-vector of monic f and g whose leads share a component."""
        p = self.p
        lcm = tuple(map(max, ft[1], gt[1]))
        fs = tuple(map(sub, lcm, ft[1]))
        gs = tuple(map(sub, lcm, gt[1]))
        out = {}
        for (c, x), v in f.items():
            out[(c, tuple(map(add, x, fs)))] = v
        for (c, x), v in g.items():
            t = (c, tuple(map(add, x, gs)))
            nv = (out.get(t, 0) - v) % p
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
        return out

    def groebner(self, gens: Iterable[Vector]) -> list[Vector]:
        """Reduced Groebner basis, monic, sorted by descending leading term."""
        queue = []
        seq = 0
        for g in gens:
            if g:
                queue.append((self.degree(g), 0, seq, None, g))
                seq += 1
        heapq.heapify(queue)
        basis: list[tuple] = []  # (vector, lead, inverse lead coefficient == 1)
        pending: set[tuple[int, int]] = set()
        while queue:
            _, _, _, pair, data = heapq.heappop(queue)
            if pair is not None:
                pending.discard(pair)
                if self._chain_redundant(pair, basis, pending):
                    continue
                i, j = pair
                data = self.spoly(basis[i][0], basis[i][1], basis[j][0], basis[j][1])
            h = self.reduce(data, basis, full=False)
            if not h:
                continue
            h = self.monic(h)
            ht = self.lead(h)
            n = len(basis)
            basis.append((h, ht, 1))
            for i in range(n):
                it = basis[i][1]
                if it[0] != ht[0]:
                    continue
                if self.product_criterion and not any(a and b for a, b in zip(it[1], ht[1])):
                    continue
                lcm = (ht[0], tuple(map(max, it[1], ht[1])))
                heapq.heappush(queue, (self._degree(lcm), self.key(lcm), seq, (i, n), None))
                seq += 1
                pending.add((i, n))
        return self.interreduce([b[0] for b in basis])

    def _chain_redundant(self, pair, basis, pending) -> bool:
        i, j = pair
        ti, tj = basis[i][1], basis[j][1]
        lcm = tuple(map(max, ti[1], tj[1]))
        for k, (_, tk, _) in enumerate(basis):
            if k == i or k == j or tk[0] != ti[0]:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if all(a <= b for a, b in zip(tk[1], lcm)):
                return True
        return False

    def interreduce(self, vectors: list[Vector]) -> list[Vector]:
        items = [(v, self.lead(v)) for v in vectors if v]
        minimal = []
        for idx, (v, t) in enumerate(items):
            redundant = False
            for jdx, (_, s) in enumerate(items):
                if jdx == idx or s[0] != t[0]:
                    continue
                if all(a <= b for a, b in zip(s[1], t[1])) and (s != t or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                minimal.append((v, t))
        out = []
        for idx, (v, t) in enumerate(minimal):
            others = [(w, s, inverse_mod(w[s], self.p)) for jdx, (w, s) in enumerate(minimal) if jdx != idx]
            out.append(self.monic(self.reduce(v, others, full=True)))
        out.sort(key=lambda v: self.key(self.lead(v)), reverse=True)
        return out

    def basis_entries(self, vectors: Sequence[Vector]) -> list[tuple]:
        entries = []
        for v in vectors:
            t = self.lead(v)
            entries.append((v, t, inverse_mod(v[t], self.p)))
        return entries


def _kernel_for(ring: PolynomialRing, order: TermOrder | None = None) -> GroebnerKernel:
    order = order or ring.order
    key = (lambda t: ring.key(t[1])) if order == ring.order else (lambda t: order.key(t[1]))
    w = ring.weights
    return GroebnerKernel(ring.p, key, lambda t: sum(a * b for a, b in zip(w, t[1])),
                          product_criterion=True)


def _to_vec(f: Polynomial) -> Vector:
    return {(0, m): c for m, c in f._terms.items()}


def _from_vec(ring: PolynomialRing, v: Vector) -> Polynomial:
    return Polynomial._raw(ring, {m: c for (_, m), c in v.items()})


def buchberger(gens: Sequence[Polynomial], order: TermOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of homogeneous generators (monic, descending leading terms)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
    kernel = _kernel_for(ring, order)
    return [_from_vec(ring, v) for v in kernel.groebner(_to_vec(g) for g in gens)]


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder | None = None) -> Polynomial:
    kernel = _kernel_for(f.ring, order)
    fv, gv = kernel.monic(_to_vec(f)), kernel.monic(_to_vec(g))
    return _from_vec(f.ring, kernel.spoly(fv, kernel.lead(fv), gv, kernel.lead(gv)))


class Ideal:
    """Homogeneous ideal given by generators, with reduced Groebner bases cached per order."""

    def __init__(self, ring: PolynomialRing, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator from another ring")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self._gb: dict[TermOrder, tuple[Polynomial, ...]] = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def groebner_basis(self, order: TermOrder | None = None) -> tuple[Polynomial, ...]:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = self._gb[order] = tuple(buchberger(self.gens, order))
        return gb

    def has_groebner_basis(self, order: TermOrder | None = None) -> bool:
        return (order or self.ring.order) in self._gb

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, f: Polynomial) -> bool:
        self.groebner_basis()
        return normal_form(f, self).is_zero()

    def __add__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise ValueError("ideals live in different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def hilbert_function(self, d: int) -> int:
        """dim_k (S/I)_d, counted as standard monomials of the Groebner basis."""
        return hilbert_function(self, d)


def normal_form(f: Polynomial, I: Ideal, order: TermOrder | None = None) -> Polynomial:
    """Fully reduced remainder of f modulo the cached Groebner basis of I."""
    order = order or I.ring.order
    if f.ring != I.ring:
        raise ValueError("polynomial and ideal live in different rings")
    if not I.has_groebner_basis(order):
        raise RuntimeError("no Groebner basis cached for this order; call groebner_basis() first")
    kernel = _kernel_for(I.ring, order)
    entries = kernel.basis_entries([_to_vec(g) for g in I.groebner_basis(order)])
    return _from_vec(I.ring, kernel.reduce(_to_vec(f), entries, full=True))


def is_groebner_basis(basis: Sequence[Polynomial], order: TermOrder | None = None) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    if not basis:
        return True
    ring = basis[0].ring
    kernel = _kernel_for(ring, order)
    vecs = [kernel.monic(_to_vec(g)) for g in basis]
    entries = kernel.basis_entries(vecs)
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            s = kernel.spoly(vecs[i], entries[i][1], vecs[j], entries[j][1])
            if kernel.reduce(s, entries, full=True):
                return False
    return True


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return I.groebner_basis() == J.groebner_basis()


def eliminate(I: Ideal, k: int) -> Ideal:
    """Elimination ideal of I in the last nvars - k variables, as an ideal of that smaller ring."""
    ring = I.ring
    if k == 0:
        return I
    if not 0 < k <= ring.nvars:
        raise ValueError("cannot eliminate that many variables")
    order = TermOrder.elimination(k)
    gb = I.groebner_basis(order)
    rest = ring.nvars - k
    if rest == 0:
        return Ideal(PolynomialRing(1, ring.p), ())
    sub_ring = PolynomialRing(rest, ring.p, TermOrder.grevlex(), ring.names[k:], ring.weights[k:])
    kept = []
    for g in gb:
        if all(not any(m[:k]) for m in g._terms):
            kept.append(Polynomial._raw(sub_ring, {m[k:]: c for m, c in g._terms.items()}))
    return Ideal(sub_ring, kept)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of t from t*I + (1 - t)*J.

    t gets weight 0 in the grading so that every generator stays homogeneous
    in the original variables; t is then eliminated with a block order.
    """
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, ())
    big = PolynomialRing(ring.nvars + 1, ring.p, TermOrder.elimination(1),
                         ("_t",) + ring.names, (0,) + ring.weights)
    p = ring.p
    gens = []
    for g in I.groebner_basis():
        gens.append(Polynomial._raw(big, {(1,) + m: c for m, c in g._terms.items()}))
    for h in J.groebner_basis():
        terms = {}
        for m, c in h._terms.items():
            terms[(0,) + m] = c
            terms[(1,) + m] = p - c
        gens.append(Polynomial._raw(big, terms))
    gb = Ideal(big, gens).groebner_basis()
    kept = [Polynomial._raw(ring, {m[1:]: c for m, c in g._terms.items()})
            for g in gb if all(m[0] == 0 for m in g._terms)]
    out = Ideal(ring, kept)
    if ring.order == TermOrder.grevlex():
        # the block order restricts to grevlex on the surviving variables,
        # so the kept elements already form the reduced basis
        out._gb[ring.order] = tuple(sorted(kept, key=lambda f: ring.key(max(f._terms, key=ring.key)),
                                           reverse=True))
    return out


def hilbert_function(I: Ideal, d: int) -> int:
    """dim (S/I)_d as the number of degree-d monomials outside the initial ideal."""
    ring = I.ring
    leads = [g.leading_term()[0] for g in I.groebner_basis()]
    count = 0
    for m in monomials_of_degree(ring.nvars, d):
        if not any(all(a <= b for a, b in zip(l, m)) for l in leads):
            count += 1
    return count


def degree_piece_dimension(gens: Sequence[Polynomial], d: int) -> int:
    """dim I_d for I = (gens), by spanning all monomial multiples and taking a rank."""
    if not gens:
        return 0
    ring = gens[0].ring
    basis = monomials_of_degree(ring.nvars, d)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        e = g.degree
        if e > d:
            continue
        for mult in monomials_of_degree(ring.nvars, d - e):
            row = [0] * len(basis)
            for m, c in g._terms.items():
                row[index[tuple(map(add, m, mult))]] = c
            rows.append(row)
    if not rows:
        return 0
    return rank(DenseMatrix(rows, ring.p, len(basis)))
