"""Arrangements of codimension-two linear subspaces: construction, incidence, and the quadric geometry.

Coordinates on P^3 are x, y, z, w and the reference quadric is the Segre
quadric xw - yz, the image of P^1 x P^1 under ([s:t], [u:v]) -> (su, sv, tu, tv).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .field import DEFAULT_PRIME, check_modulus
from .groebner import Ideal, intersect
from .linalg import DenseMatrix, determinant, nullspace, rank, row_echelon, solve
from .polynomial import Polynomial, PolynomialRing, monomials_of_degree


class ArrangementError(ValueError):
    """Raised when the input does not describe a valid arrangement."""


class LinearSubspace:
    """Projective linear subspace of P^n cut out by independent linear forms (rows of ``forms``)."""

    __slots__ = ("forms", "n")

    def __init__(self, forms: DenseMatrix | Sequence[Sequence[int]], n: int, p: int = DEFAULT_PRIME):
        if not isinstance(forms, DenseMatrix):
            forms = DenseMatrix(forms, p, n + 1)
        if forms.ncols != n + 1:
            raise ArrangementError("forms must have n + 1 coefficients")
        if rank(forms) != forms.nrows:
            raise ArrangementError("defining forms are linearly dependent")
        self.forms = forms
        self.n = n

    @property
    def p(self) -> int:
        return self.forms.p

    @property
    def dimension(self) -> int:
        return self.n - self.forms.nrows

    def ideal(self, ring: PolynomialRing) -> Ideal:
        return Ideal(ring, [ring.linear_form(r) for r in self.forms.rows])

    def points(self) -> list[list[int]]:
        """A basis of the affine cone over the subspace."""
        return nullspace(self.forms)

    def cone(self, m: int) -> LinearSubspace:
        rows = [list(r) + [0] * m for r in self.forms.rows]
        return LinearSubspace(DenseMatrix(rows, self.p, self.n + 1 + m), self.n + m)

    def __eq__(self, other):
        # equal as subspaces: same row space
        if not isinstance(other, LinearSubspace) or other.n != self.n:
            return False
        r = rank(self.forms)
        return rank(other.forms) == r and rank(self.forms.stack(other.forms)) == r

    def __hash__(self):
        return hash((self.n, self.forms.nrows))

    def __repr__(self):
        return f"LinearSubspace({[list(r) for r in self.forms.rows]}, n={self.n})"


def stacked_rank(X: LinearSubspace, Y: LinearSubspace) -> int:
    return rank(X.forms.stack(Y.forms))


class Arrangement:
    """Finite set of (n-2)-planes in P^n with no inclusions; validated on construction."""

    def __init__(self, members: Sequence[LinearSubspace], n: int,
                 bipartition: tuple[Sequence[int], Sequence[int]] | None = None):
        if not members:
            raise ArrangementError("an arrangement needs at least one member")
        self.members = tuple(members)
        self.n = n
        self.p = members[0].p
        for L in self.members:
            if L.n != n or L.p != self.p:
                raise ArrangementError("members live in different ambient spaces")
            if L.forms.nrows != 2:
                raise ArrangementError("every member must be cut out by exactly two forms")
        for i, j in combinations(range(len(self.members)), 2):
            if stacked_rank(self.members[i], self.members[j]) <= 2:
                raise ArrangementError(f"members {i} and {j} coincide")
        if bipartition is not None:
            parts = (tuple(bipartition[0]), tuple(bipartition[1]))
            if sorted(parts[0] + parts[1]) != list(range(len(self.members))):
                raise ArrangementError("bipartition must partition the member indices")
            bipartition = parts
        self.bipartition = bipartition

    def __len__(self):
        return len(self.members)

    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.n + 1, self.p)

    def stacked_forms(self) -> DenseMatrix:
        rows = [r for L in self.members for r in L.forms.rows]
        return DenseMatrix(rows, self.p, self.n + 1)

    def part(self, k: int) -> list[LinearSubspace]:
        if self.bipartition is None:
            raise ArrangementError("arrangement carries no bipartition")
        return [self.members[i] for i in self.bipartition[k]]

    def __repr__(self):
        return f"Arrangement({len(self.members)} members in P^{self.n})"


@dataclass(frozen=True)
class IncidenceGraph:
    vertices: int
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("edges join two distinct vertices")

    def neighbours(self, v: int) -> set[int]:
        return {u for e in self.edges if v in e for u in e if u != v}

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    @classmethod
    def from_pairs(cls, vertices: int, pairs) -> IncidenceGraph:
        return cls(vertices, frozenset(frozenset(e) for e in pairs))


def incidence_graph(A: Arrangement) -> IncidenceGraph:
    """Edge between two members when they meet in an (n-3)-plane, i.e. their forms span only 3 dimensions."""
    edges = set()
    for i, j in combinations(range(len(A.members)), 2):
        r = stacked_rank(A.members[i], A.members[j])
        if r <= 2:
            raise ArrangementError(f"members {i} and {j} violate the no-inclusion condition")
        if r == 3:
            edges.add(frozenset((i, j)))
    return IncidenceGraph(len(A.members), frozenset(edges))


def bipartition_of(G: IncidenceGraph) -> tuple[list[int], list[int]] | None:
    """The two colour classes of a connected bipartite graph, or None."""
    if G.vertices == 0:
        return None
    colour = {0: 0}
    stack = [0]
    adj = {v: G.neighbours(v) for v in range(G.vertices)}
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in colour:
                colour[u] = 1 - colour[v]
                stack.append(u)
            elif colour[u] == colour[v]:
                return None
    if len(colour) != G.vertices:
        return None
    left = [v for v in range(G.vertices) if colour[v] == 0]
    right = [v for v in range(G.vertices) if colour[v] == 1]
    return left, right


def is_complete_bipartite(G: IncidenceGraph) -> tuple[int, int] | None:
    """Type (a, b) with a <= b if G is a (connected) complete bipartite graph."""
    parts = bipartition_of(G)
    if parts is None or not parts[1]:
        return None
    left, right = parts
    if len(G.edges) != len(left) * len(right):
        return None
    a, b = sorted((len(left), len(right)))
    return a, b


def _ratio(param) -> tuple[int, int]:
    if isinstance(param, tuple):
        return param
    return (param, 1)


def _check_distinct(ratios, p: int, label: str):
    for (s1, t1), (s2, t2) in combinations(ratios, 2):
        if (s1 * t2 - s2 * t1) % p == 0:
            raise ArrangementError(f"repeated ruling parameter in {label}: degenerate arrangement")
    for s, t in ratios:
        if s % p == 0 and t % p == 0:
            raise ArrangementError("[0:0] is not a point of P^1")


def ruling_line(kind: int, param, p: int) -> LinearSubspace:
    """Line of the Segre quadric: kind 0 is V(tx - sz, ty - sw), kind 1 is V(vx - uy, vz - uw)."""
    s, t = _ratio(param)
    if kind == 0:
        rows = [[t, 0, -s, 0], [0, t, 0, -s]]
    else:
        rows = [[t, -s, 0, 0], [0, 0, t, -s]]
    return LinearSubspace(DenseMatrix(rows, p, 4), 3)


def build_bipartite_on_quadric(a: int, b: int, params1=None, params2=None,
                               p: int = DEFAULT_PRIME) -> Arrangement:
    """a lines from one ruling of xw - yz and b from the other, with Γ ≅ K_{a,b}.

    Parameters are integers k (meaning the ratio [k:1]) or explicit pairs (s, t);
    they default to 0, 1, 2, ...
    """
    check_modulus(p)
    if a < 1 or b < 1:
        raise ArrangementError("both rulings need at least one line")
    if p <= a + b:
        raise ArrangementError("modulus too small for distinct default parameters")
    params1 = list(range(a)) if params1 is None else list(params1)
    params2 = list(range(b)) if params2 is None else list(params2)
    if len(params1) != a or len(params2) != b:
        raise ArrangementError("need one parameter per line")
    r1 = [_ratio(x) for x in params1]
    r2 = [_ratio(x) for x in params2]
    _check_distinct(r1, p, "first ruling")
    _check_distinct(r2, p, "second ruling")
    members = [ruling_line(0, r, p) for r in r1] + [ruling_line(1, r, p) for r in r2]
    return Arrangement(members, 3, (range(a), range(a, a + b)))


def cone(A: Arrangement, m: int) -> Arrangement:
    """Reinterpret the defining forms in m more coordinates: the cone over A with an (m-1)-plane vertex."""
    if m < 0:
        raise ArrangementError("cannot cone by a negative number of coordinates")
    if m == 0:
        return A
    return Arrangement([L.cone(m) for L in A.members], A.n + m, A.bipartition)


def common_intersection(A: Arrangement) -> int:
    """Projective dimension of the intersection of all members (-1 when empty)."""
    if len(A.members) < 2:
        raise ArrangementError("need at least two members")
    return A.n - rank(A.stacked_forms())


def intersection_dimension(subspaces: Sequence[LinearSubspace]) -> int:
    n = subspaces[0].n
    rows = [r for L in subspaces for r in L.forms.rows]
    return n - rank(DenseMatrix(rows, subspaces[0].p, n + 1))


def defining_ideal(A: Arrangement, ring: PolynomialRing | None = None) -> Ideal:
    """Ideal of the union: the intersection of the members' linear ideals."""
    ring = ring or A.ring()
    ideal = A.members[0].ideal(ring)
    for L in A.members[1:]:
        ideal = intersect(ideal, L.ideal(ring))
    return ideal


QUADRIC_MONOMIALS = monomials_of_degree(4, 2)


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric 4x4 matrix of a quadric surface in P^3 (characteristic is odd)."""

    matrix: DenseMatrix

    def __post_init__(self):
        M = self.matrix
        if M.nrows != 4 or M.ncols != 4:
            raise ValueError("quadric surfaces in P^3 need a 4x4 matrix")
        if any(M[i, j] != M[j, i] for i in range(4) for j in range(4)):
            raise ValueError("matrix is not symmetric")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], p: int) -> QuadraticForm:
        """Coefficients of the ten degree-2 monomials (in QUADRIC_MONOMIALS order)."""
        half = pow(2, -1, p)
        M = [[0] * 4 for _ in range(4)]
        for mono, c in zip(QUADRIC_MONOMIALS, coeffs):
            idx = [i for i, e in enumerate(mono) for _ in range(e)]
            i, j = idx
            if i == j:
                M[i][i] = c % p
            else:
                M[i][j] = M[j][i] = c * half % p
        return cls(DenseMatrix(M, p))

    @property
    def p(self) -> int:
        return self.matrix.p

    def is_smooth(self) -> bool:
        return determinant(self.matrix) != 0

    def polynomial(self, ring: PolynomialRing) -> Polynomial:
        M, p = self.matrix, self.p
        terms = {}
        for mono in QUADRIC_MONOMIALS:
            i, j = [k for k, e in enumerate(mono) for _ in range(e)]
            terms[mono] = M[i, i] if i == j else 2 * M[i, j] % p
        return Polynomial(ring, terms)

    def evaluate(self, v: Sequence[int]) -> int:
        M = self.matrix
        return sum(v[i] * M[i, j] * v[j] for i in range(4) for j in range(4)) % self.p

    def contains_line(self, L: LinearSubspace) -> bool:
        # a quadric vanishing at three points of a line contains it
        return all(self.evaluate(line_point(L, t)) == 0 for t in (0, 1, None))

    def proportional_to(self, other: QuadraticForm) -> bool:
        a = [v for r in self.matrix.rows for v in r]
        b = [v for r in other.matrix.rows for v in r]
        return rank(DenseMatrix([a, b], self.p)) == 1


def line_point(L: LinearSubspace, t) -> list[int]:
    """Point P0 + t*P1 of the line's parametrization; t = None gives P1 (the point at infinity)."""
    P0, P1 = L.points()
    if t is None:
        return list(P1)
    return [(u + t * v) % L.p for u, v in zip(P0, P1)]


def quadric_conditions(lines: Sequence[LinearSubspace], params=(0, 1, None)) -> DenseMatrix:
    """One row per sample point: the ten quadratic monomials evaluated there.

    By default the sample points on each line sit at parameters 0, 1 and ∞.
    """
    p = lines[0].p
    rows = []
    for L in lines:
        for t in params:
            q = line_point(L, t)
            rows.append([_mono_eval(mono, q, p) for mono in QUADRIC_MONOMIALS])
    return DenseMatrix(rows, p, len(QUADRIC_MONOMIALS))


def _mono_eval(mono, q, p):
    v = 1
    for x, e in zip(q, mono):
        if e:
            v = v * pow(x, e, p) % p
    return v


def quadric_through(lines: Sequence[LinearSubspace], params=(0, 1, None)) -> QuadraticForm:
    """The unique quadric containing three pairwise skew lines of P^3; must be smooth."""
    if len(lines) != 3 or any(L.n != 3 or L.dimension != 1 for L in lines):
        raise ArrangementError("need exactly three lines in P^3")
    for X, Y in combinations(lines, 2):
        if stacked_rank(X, Y) != 4:
            raise ArrangementError("lines are not pairwise skew")
    if len(set(params)) != 3:
        raise ArrangementError("need three distinct sample parameters per line")
    conditions = quadric_conditions(lines, params)
    sol = solve(conditions, [0] * conditions.nrows)
    if sol.dimension != 1:
        raise ArrangementError(f"expected a unique quadric, solution space has dimension {sol.dimension}")
    Q = QuadraticForm.from_coefficients(sol.kernel[0], lines[0].p)
    if not Q.is_smooth():
        raise ArrangementError("quadric through the lines is singular")
    return Q


def essential_lines(A: Arrangement) -> Arrangement:
    """Present A as a cone over a line arrangement in P^3.

    The forms of all members span a space of dimension <= 4; writing each form in
    a basis of (an extension of) that span gives lines in P^3 whose cone is A.
    """
    if A.n == 3:
        return A
    p = A.p
    rows, _ = row_echelon(A.stacked_forms())
    if len(rows) > 4:
        raise ArrangementError("forms span more than four dimensions; not a cone over lines in P^3")
    basis = [list(r) for r in rows]
    for j in range(A.n + 1):
        if len(basis) == 4:
            break
        e = [int(i == j) for i in range(A.n + 1)]
        if rank(DenseMatrix(basis + [e], p)) > len(basis):
            basis.append(e)
    B = DenseMatrix(basis, p).transpose()  # columns are the basis forms
    members = []
    for L in A.members:
        coords = []
        for r in L.forms.rows:
            sol = solve(B, list(r))
            coords.append(list(sol.vector))
        members.append(LinearSubspace(DenseMatrix(coords, p, 4), 3))
    return Arrangement(members, 3, A.bipartition)


def lies_on_smooth_quadric(A: Arrangement) -> bool:
    """Whether the line model of a complete bipartite A sits on a smooth quadric with parts in opposite rulings.

    Parts with at most two lines each always do. Otherwise the quadric through three
    lines of a part with >= 3 members is the only candidate.
    """
    B = essential_lines(A)
    G = incidence_graph(B)
    parts = bipartition_of(G)
    if parts is None or is_complete_bipartite(G) is None:
        return False
    big = max(parts, key=len)
    if len(big) < 3:
        return True
    try:
        Q = quadric_through([B.members[i] for i in big[:3]])
    except ArrangementError:
        return False
    return all(Q.contains_line(L) for L in B.members)


def build_generic_star(b: int, seed: int = 0, p: int = DEFAULT_PRIME, max_tries: int = 1000) -> Arrangement:
    """K_{1,b} line arrangement: T = V(x, y) and b lines through distinct points of T
    in pseudo-random directions, pairwise skew. No regularity is claimed for it."""
    if b < 3:
        raise ArrangementError("the generic star construction needs b >= 3")
    rng = random.Random(seed)
    T = LinearSubspace(DenseMatrix([[1, 0, 0, 0], [0, 1, 0, 0]], p, 4), 3)
    for _ in range(max_tries):
        lines = []
        for k in range(b):
            base = [0, 0, 1, k % p]
            direction = [rng.randrange(p) for _ in range(4)]
            pts = DenseMatrix([base, direction], p, 4)
            if rank(pts) < 2:
                break
            lines.append(LinearSubspace(DenseMatrix(nullspace(pts), p, 4), 3))
        if len(lines) != b:
            continue
        try:
            A = Arrangement([T] + lines, 3, ([0], range(1, b + 1)))
        except ArrangementError:
            continue
        if is_complete_bipartite(incidence_graph(A)) == (1, b):
            return A
    raise ArrangementError("could not draw a non-degenerate star arrangement")


def split_bipartite(A: Arrangement, b1: int, b2: int, c1: int, c2: int) -> tuple[Arrangement, Arrangement]:
    """Split each part: the first b1 (b2) lines go to B, the remaining c1 (c2) to C."""
    if A.bipartition is None:
        raise ArrangementError("arrangement carries no bipartition")
    p1, p2 = A.bipartition
    if b1 + c1 != len(p1) or b2 + c2 != len(p2):
        raise ArrangementError("split counts do not add up to the part sizes")
    if min(b1, b2, c1, c2) < 1:
        raise ArrangementError("every piece needs at least one line from each part")

    def sub(i1, i2):
        members = [A.members[i] for i in i1] + [A.members[i] for i in i2]
        return Arrangement(members, A.n, (range(len(i1)), range(len(i1), len(i1) + len(i2))))

    return sub(p1[:b1], p2[:b2]), sub(p1[b1:], p2[b2:])
