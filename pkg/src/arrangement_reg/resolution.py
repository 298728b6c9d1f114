"""Minimal graded free resolutions, Betti tables and the invariants read off them."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import comb
from operator import add
from typing import Sequence

from .field import inverse_mod
from .groebner import GroebnerKernel, Ideal, Vector
from .linalg import DenseMatrix
from .polynomial import EXP_BASE, Polynomial, PolynomialRing, _revlex_code, monomials_of_degree


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module ⊕ S(-t) over the standard graded polynomial ring, one twist per generator."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def basis(self, nvars: int, d: int) -> list[tuple[int, tuple[int, ...]]]:
        """Monomial basis of the degree-d piece as (component, exponents) terms."""
        return [(c, m) for c, t in enumerate(self.twists) for m in monomials_of_degree(nvars, d - t)]


class GradedMap:
    """Degree-0 map source -> target; column j is the image of the j-th source generator."""

    def __init__(self, ring: PolynomialRing, source: GradedFreeModule, target: GradedFreeModule,
                 columns: Sequence[Vector]):
        self.ring = ring
        self.source = source
        self.target = target
        self.columns = [dict(c) for c in columns]
        if len(self.columns) != source.rank:
            raise ValueError("one column per source generator required")
        for j, col in enumerate(self.columns):
            for (c, m), _ in col.items():
                if not 0 <= c < target.rank:
                    raise ValueError("column entry outside the target")
                if sum(m) + target.twists[c] != source.twists[j]:
                    raise ValueError("entry degree incompatible with the twists")

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial._raw(self.ring, {m: v for (c, m), v in self.columns[j].items() if c == i})

    def matrix(self) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def apply(self, v: Vector) -> Vector:
        """Image of a source vector (terms indexed by source components)."""
        p = self.ring.p
        out: dict = {}
        for (j, m), a in v.items():
            for (i, mm), b in self.columns[j].items():
                t = (i, tuple(map(add, m, mm)))
                nv = (out.get(t, 0) + a * b) % p
                if nv:
                    out[t] = nv
                else:
                    out.pop(t, None)
        return out

    def compose(self, inner: GradedMap) -> GradedMap:
        """self ∘ inner."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return GradedMap(self.ring, inner.source, self.target, [self.apply(c) for c in inner.columns])

    def is_zero(self) -> bool:
        return not any(self.columns)

    def has_unit_entry(self) -> bool:
        return any(not any(m) for col in self.columns for (_, m) in col)

    def degree_matrix(self, d: int) -> DenseMatrix:
        """The linear map (source)_d -> (target)_d in monomial bases; rows index the target."""
        n = self.ring.nvars
        tbasis = self.target.basis(n, d)
        index = {t: i for i, t in enumerate(tbasis)}
        sbasis = self.source.basis(n, d)
        cols = []
        for j, m in sbasis:
            col = [0] * len(tbasis)
            for (i, mm), v in self.columns[j].items():
                col[index[(i, tuple(map(add, m, mm)))]] = v
            cols.append(col)
        if not tbasis:
            return DenseMatrix([], self.ring.p, len(sbasis))
        rows = [[cols[j][i] for j in range(len(sbasis))] for i in range(len(tbasis))]
        return DenseMatrix(rows, self.ring.p, len(sbasis))


def _module_kernel(ring: PolynomialRing, twists: Sequence[int], elim_from: int) -> GroebnerKernel:
    # components below elim_from form the eliminated block; inside a block terms are
    # compared by twisted degree, then grevlex, then component
    n = ring.nvars
    shift_mono = EXP_BASE ** n
    ncomp = len(twists)

    def key(t):
        c, m = t
        block = 1 if c < elim_from else 0
        tdeg = sum(m) + twists[c]
        return ((block * 4096 + tdeg) * shift_mono + _revlex_code(m)) * (ncomp + 1) + (ncomp - c)

    def degree(t):
        return sum(t[1]) + twists[t[0]]

    return GroebnerKernel(ring.p, key, degree)


class _Echelon:
    """Semi-echelon rows of sparse vectors with distinct leading terms (one graded piece)."""

    def __init__(self, p: int, key):
        self.p = p
        self.key = key
        self.rows: dict = {}
        self._terms: dict = {}

    def reduce(self, v: dict) -> dict:
        p = self.p
        v = dict(v)
        heap = []
        for t in v:
            k = self.key(t)
            self._terms[k] = t
            heap.append(-k)
        heapq.heapify(heap)
        while heap:
            t = self._terms[-heapq.heappop(heap)]
            c = v.get(t)
            if c is None:
                continue
            row = self.rows.get(t)
            if row is None:
                return v
            for s, rv in row.items():
                old = v.get(s)
                nv = ((old or 0) - c * rv) % p
                if nv:
                    if old is None:
                        k = self.key(s)
                        self._terms[k] = s
                        heapq.heappush(heap, -k)
                    v[s] = nv
                else:
                    v.pop(s, None)
        return v

    def insert(self, v: dict) -> bool:
        """Add v to the span; False when v was already in it."""
        v = self.reduce(v)
        if not v:
            return False
        lead = max(v, key=self.key)
        inv = inverse_mod(v[lead], self.p)
        self.rows[lead] = {t: c * inv % self.p for t, c in v.items()}
        return True


def _vector_degree(v: Vector, twists: Sequence[int]) -> int:
    c, m = next(iter(v))
    return sum(m) + twists[c]


def minimal_generators(vectors: Sequence[Vector], twists: Sequence[int], ring: PolynomialRing) -> list[Vector]:
    """A minimal generating subset of the graded submodule generated by homogeneous vectors.

    Candidates are scanned by increasing degree and kept only when they are not in the
    span of the degree-d piece generated by those already kept (graded Nakayama).
    """
    n = ring.nvars
    cands = sorted((v for v in vectors if v), key=lambda v: _vector_degree(v, twists))
    kept: list[Vector] = []
    kept_deg: list[int] = []

    def key(t):
        return (t[0] << (6 * n)) + _revlex_code(t[1])

    i = 0
    while i < len(cands):
        d = _vector_degree(cands[i], twists)
        ech = _Echelon(ring.p, key)
        for g, e in zip(kept, kept_deg):
            for mult in monomials_of_degree(n, d - e):
                ech.insert({(c, tuple(map(add, m, mult))): v for (c, m), v in g.items()})
        while i < len(cands) and _vector_degree(cands[i], twists) == d:
            if ech.insert(cands[i]):
                kept.append(cands[i])
                kept_deg.append(d)
            i += 1
    return kept


def syzygies(phi: GradedMap) -> GradedMap:
    """Minimal generators of ker(phi) as a map into phi.source.

    Each column g_j is paired with the basis vector e_j of the source and a
    Groebner basis of the pairs is computed under an order that eliminates the
    target block; basis elements with no target part are the syzygies. These
    generate the kernel and are then pruned to a minimal set.
    """
    ring = phi.ring
    r = phi.target.rank
    m = phi.source.rank
    twists = tuple(phi.target.twists) + tuple(phi.source.twists)
    kernel = _module_kernel(ring, twists, r)
    ones = (0,) * ring.nvars
    gens = []
    for j, col in enumerate(phi.columns):
        v = dict(col)
        v[(r + j, ones)] = 1
        gens.append(v)
    gb = kernel.groebner(gens)
    syz = []
    for v in gb:
        if kernel.lead(v)[0] >= r:
            syz.append({(c - r, mono): a for (c, mono), a in v.items()})
    mins = minimal_generators(syz, phi.source.twists, ring)
    mins.sort(key=lambda v: _vector_degree(v, phi.source.twists))
    source = GradedFreeModule(tuple(_vector_degree(v, phi.source.twists) for v in mins))
    return GradedMap(ring, source, phi.source, mins)


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} of S/I, stored sparsely (zeros omitted)."""

    entries: dict = field(default_factory=dict)
    nvars: int = 4

    def __post_init__(self):
        for (i, j), b in self.entries.items():
            if b < 1:
                raise ValueError("Betti table stores positive entries only")

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def regularity(self, of_ideal: bool = True) -> int:
        return regularity(self, of_ideal)

    def projective_dimension(self) -> int:
        return projective_dimension(self)

    def min_generator_degrees(self) -> list[int]:
        return min_generator_degrees(self)

    def total_betti(self) -> list[int]:
        pd = self.projective_dimension()
        return [sum(b for (i, _), b in self.entries.items() if i == k) for k in range(pd + 1)]

    def hilbert_function(self, d: int) -> int:
        """dim (S/I)_d from the alternating sum of the resolution's graded ranks."""
        n = self.nvars
        total = 0
        for (i, j), b in self.entries.items():
            if d - j >= 0:
                total += (-1) ** i * b * comb(d - j + n - 1, n - 1)
        return total

    def offsets(self) -> list[int]:
        return sorted({j - i for i, j in self.entries})

    def rows(self) -> list[list[int]]:
        """One row per homological index i, one column per offset j - i."""
        offs = self.offsets()
        return [[self[(i, i + o)] for o in offs] for i in range(self.projective_dimension() + 1)]

    def to_csv(self) -> str:
        offs = self.offsets()
        lines = ["i," + ",".join(str(o) for o in offs)]
        for i, row in enumerate(self.rows()):
            lines.append(f"{i}," + ",".join(str(b) if b else "" for b in row))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """Macaulay2-style display: columns are homological degrees, rows are offsets."""
        pd = self.projective_dimension()
        offs = list(range(min(self.offsets()), max(self.offsets()) + 1))
        cells = [[str(self[(i, i + o)]) if self[(i, i + o)] else "." for i in range(pd + 1)] for o in offs]
        width = max([len(c) for row in cells for c in row] + [len(str(pd))])
        head = "      " + " ".join(str(i).rjust(width) for i in range(pd + 1))
        total = "total:" + " ".join(str(b).rjust(width) for b in self.total_betti())
        body = [f"{o:>5}:" + " ".join(c.rjust(width) for c in row) for o, row in zip(offs, cells)]
        return "\n".join([head, total] + body) + "\n"

    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "betti": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
        }


def minimal_free_resolution(I: Ideal) -> tuple[list[GradedMap], BettiTable]:
    """Minimal free resolution of S/I: maps F_1 -> F_0 = S, F_2 -> F_1, ..."""
    ring = I.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("resolutions need the standard grading")
    F0 = GradedFreeModule((0,))
    gb = I.groebner_basis()
    if any(g.is_constant() for g in gb):
        return [], BettiTable({}, ring.nvars)
    cols = [{(0, m): c for m, c in g._terms.items()} for g in gb]
    gens = minimal_generators(cols, F0.twists, ring)
    gens.sort(key=lambda v: _vector_degree(v, F0.twists))
    maps: list[GradedMap] = []
    if gens:
        src = GradedFreeModule(tuple(_vector_degree(v, F0.twists) for v in gens))
        maps.append(GradedMap(ring, src, F0, gens))
        while True:
            nxt = syzygies(maps[-1])
            if nxt.source.rank == 0:
                break
            maps.append(nxt)
    entries = {(0, 0): 1}
    for i, phi in enumerate(maps, start=1):
        for t in phi.source.twists:
            entries[(i, t)] = entries.get((i, t), 0) + 1
    return maps, BettiTable(entries, ring.nvars)


def betti_table(I: Ideal) -> BettiTable:
    return minimal_free_resolution(I)[1]


def regularity(B: BettiTable, of_ideal: bool = True) -> int:
    """max{j - i : beta_{i,j} != 0}; for the ideal I this is reg(S/I) + 1."""
    if not B.entries:
        raise ValueError("empty Betti table")
    if of_ideal:
        vals = [j - i + 1 for (i, j) in B.entries if i >= 1]
        if not vals:
            raise ValueError("the zero ideal has no regularity")
        return max(vals)
    return max(j - i for (i, j) in B.entries)


def projective_dimension(B: BettiTable) -> int:
    if not B.entries:
        raise ValueError("empty Betti table")
    return max(i for i, _ in B.entries)


def min_generator_degrees(B: BettiTable) -> list[int]:
    """Degrees of the minimal generators of I, with multiplicity (beta_{1,j} of S/I)."""
    out = []
    for (i, j), b in sorted(B.entries.items()):
        if i == 1:
            out.extend([j] * b)
    return out


def is_acm(I: Ideal, codim: int) -> bool:
    """Arithmetically Cohen-Macaulay test via Auslander-Buchsbaum: pd(S/I) == codim."""
    return projective_dimension(betti_table(I)) == codim
