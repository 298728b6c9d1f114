"""Theorem verification: build arrangements, compute their invariants, compare with both oracles."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import asdict, dataclass, field

from .arrangements import (
    Arrangement,
    ArrangementError,
    build_bipartite_on_quadric,
    cone,
    defining_ideal,
    incidence_graph,
    is_complete_bipartite,
    lies_on_smooth_quadric,
    split_bipartite,
)
from .cohomology import acm_from_cohomology, reg_from_cohomology
from .field import DEFAULT_PRIME
from .resolution import BettiTable, minimal_free_resolution

CODIM = 2
CONE_SPOT_CHECKS = ((2, 2), (3, 3), (3, 4))


def covered_by_theorems(a: int, b: int) -> bool:
    """The (a, b) for which Γ ≅ K_{a,b} alone pins down regularity and ACM-ness in every P^n."""
    a, b = sorted((a, b))
    return (b <= 2) or (2 <= a and b <= 3) or (3 <= a)


def supported(a: int, b: int, n: int) -> bool:
    a, b = sorted((a, b))
    if n == 3 and (a, b) == (1, 3):
        return True
    return covered_by_theorems(a, b)


def expected_regularity(a: int, b: int) -> int:
    a, b = sorted((a, b))
    return max(a + 1, b)


def expected_acm(a: int, b: int) -> bool:
    return abs(b - a) <= 1


def build(a: int, b: int, n: int = 3, p: int = DEFAULT_PRIME) -> Arrangement:
    """On-quadric K_{a,b} in P^3, coned up to P^n."""
    if n < 3:
        raise ArrangementError("ambient dimension must be at least 3")
    return cone(build_bipartite_on_quadric(a, b, p=p), n - 3)


@dataclass
class ReportRow:
    a: int | None
    b: int | None
    n: int
    reg_betti: int
    reg_cohomology: int | None
    pd: int
    acm_betti: bool
    acm_cohomology: bool | None
    expected_reg: int | None
    expected_acm: bool | None
    agree: bool
    max_generator_degree: int = 0
    degenerate: bool = False
    notes: list = field(default_factory=list)

    FIELDS = ("a", "b", "n", "reg_betti", "reg_cohomology", "pd", "acm_betti", "acm_cohomology",
              "expected_reg", "expected_acm", "agree")

    def to_dict(self) -> dict:
        return asdict(self)

    def cells(self) -> list[str]:
        out = []
        for k in self.FIELDS:
            v = getattr(self, k)
            out.append("" if v is None else str(v).lower() if isinstance(v, bool) else str(v))
        return out


@dataclass
class Analysis:
    row: ReportRow
    betti: BettiTable


def analyze(A: Arrangement) -> Analysis:
    """Everything the report needs about one arrangement."""
    G = incidence_graph(A)
    typ = is_complete_bipartite(G)
    _, B = minimal_free_resolution(defining_ideal(A))
    reg = B.regularity()
    pd = B.projective_dimension()
    acm = pd == CODIM
    gens = B.min_generator_degrees()
    row = ReportRow(None, None, A.n, reg, None, pd, acm, None, None, None, True,
                    max(gens) if gens else 0, 1 in gens)
    if typ is not None:
        row.a, row.b = typ
        if lies_on_smooth_quadric(A):
            a, b = typ
            row.reg_cohomology = reg_from_cohomology(a, b)
            row.acm_cohomology = acm_from_cohomology(a, b)
            row.expected_reg = expected_regularity(a, b)
            row.expected_acm = expected_acm(a, b)
            row.agree = (reg == row.reg_cohomology == row.expected_reg
                         and acm == row.acm_cohomology == row.expected_acm)
        else:
            row.notes.append("not on a smooth quadric: no prediction")
    else:
        row.notes.append("incidence graph is not complete bipartite")
    return Analysis(row, B)


def check_bounds(row: ReportRow) -> list[str]:
    """Known upper/lower bounds; Giaimo's needs a nondegenerate curve (no linear form in the ideal)."""
    problems = []
    a, b = row.a, row.b
    if a is None:
        return problems
    if row.reg_betti > a + b:
        problems.append(f"Derksen-Sidman bound reg <= {a + b} violated")
    if not row.degenerate and row.reg_betti > a + b - 1:
        problems.append(f"Giaimo bound reg <= {a + b - 1} violated")
    if row.expected_reg is not None and row.max_generator_degree < max(a, b):
        problems.append(f"no minimal generator of degree >= {max(a, b)}")
    return problems


@dataclass
class GridRow:
    row: ReportRow
    problems: list

    @property
    def ok(self) -> bool:
        return self.row.agree and not self.problems


def _grid_job(args) -> GridRow:
    a, b, n, p = args
    row = analyze(build(a, b, n, p)).row
    problems = check_bounds(row)
    if row.expected_reg is None:
        problems.append("no theorem prediction for a supported case")
    return GridRow(row, problems)


def grid_points(amax: int, bmax: int, n: int = 3, max_lines: int = 10) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, amax + 1) for b in range(a, bmax + 1)
            if a + b <= max_lines and supported(a, b, n)]


@dataclass
class GridReport:
    rows: list
    cone_rows: list
    complete: bool = True
    fault_check: str | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows + self.cone_rows) and self.fault_check != "accepted"


def verify_grid(amax: int = 5, bmax: int = 9, n: int = 3, max_lines: int = 10, p: int = DEFAULT_PRIME,
                jobs: int = 1, cones: bool = True, time_limit: float | None = None,
                inject_fault: bool = False) -> GridReport:
    """Build and check every supported (a, b) on the grid, plus cone spot checks."""
    start = time.monotonic()
    points = grid_points(amax, bmax, n, max_lines)
    tasks = [(a, b, n, p) for a, b in points]
    if cones:
        tasks += [(a, b, m, p) for a, b in CONE_SPOT_CHECKS for m in (4, 5)]
    results: list[GridRow] = []
    complete = True
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_grid_job, t) for t in tasks]
            for fut in futures:
                remaining = None if time_limit is None else max(0.0, time_limit - (time.monotonic() - start))
                try:
                    results.append(fut.result(timeout=remaining))
                except FutureTimeout:
                    complete = False
                    for f in futures:
                        f.cancel()
                    break
    else:
        for t in tasks:
            if time_limit is not None and time.monotonic() - start > time_limit:
                complete = False
                break
            results.append(_grid_job(t))
    main = results[: len(points)]
    extra = results[len(points):]
    if cones:
        base = {(r.row.a, r.row.b): r.row for r in main if r.row.n == 3}
        for r in extra:
            ref = base.get((r.row.a, r.row.b))
            if ref is None:
                ref = _grid_job((r.row.a, r.row.b, 3, p)).row
            if (r.row.reg_betti, r.row.acm_betti) != (ref.reg_betti, ref.acm_betti):
                r.problems.append("cone changed regularity or ACM verdict")
    fault = None
    if inject_fault:
        fault = fault_injection(p)
    return GridReport(main, extra, complete, fault)


def fault_injection(p: int = DEFAULT_PRIME) -> str:
    """Collide two ruling parameters; the constructor must refuse."""
    try:
        build_bipartite_on_quadric(3, 3, params1=[0, 1, 1], p=p)
    except ArrangementError:
        return "rejected"
    return "accepted"


def caviglia_predicts_equality(b1: int, b2: int, c1: int, c2: int) -> bool:
    return ((b1 > b2 and c1 > c2) or (b1 < b2 and c1 < c2)
            or (b1 == b2 + 1 and c2 == c1 + 1) or (b2 == b1 + 1 and c1 == c2 + 1))


@dataclass
class SplitRow:
    b1: int
    b2: int
    c1: int
    c2: int
    reg_a: int
    reg_b: int
    reg_c: int
    equality: bool
    predicted: bool

    @property
    def ok(self) -> bool:
        return self.reg_a <= self.reg_b + self.reg_c and self.equality == self.predicted


def _reg(A: Arrangement, cache: dict) -> int:
    k = tuple(r for L in A.members for r in L.forms.rows)
    if k not in cache:
        cache[k] = analyze(A).row.reg_betti
    return cache[k]


def caviglia_splits(a1: int, a2: int, p: int = DEFAULT_PRIME, cache: dict | None = None) -> list[SplitRow]:
    """Every split of on-quadric K_{a1,a2} into K_{b1,b2} ∪ K_{c1,c2} with all parts nonempty."""
    cache = {} if cache is None else cache
    A = build_bipartite_on_quadric(a1, a2, p=p)
    reg_a = _reg(A, cache)
    rows = []
    for b1 in range(1, a1):
        for b2 in range(1, a2):
            c1, c2 = a1 - b1, a2 - b2
            B, C = split_bipartite(A, b1, b2, c1, c2)
            rb, rc = _reg(B, cache), _reg(C, cache)
            rows.append(SplitRow(b1, b2, c1, c2, reg_a, rb, rc, reg_a == rb + rc,
                                 caviglia_predicts_equality(b1, b2, c1, c2)))
    return rows
