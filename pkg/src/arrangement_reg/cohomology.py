"""Closed-form cohomology of line bundles on P^1, P^1 x P^1 and P^3.

For a line arrangement with a lines in one ruling of a smooth quadric Q and b
in the other, the ideal sheaf sits in 0 -> O(-2) -> I_A -> O_Q(-a,-b) -> 0.
For twists m >= -1 the outer terms give h^i(I_A(m)) = h^i(P^1 x P^1, O(m-a, m-b))
when i is 1 or 2, and h^3(I_A(m)) = h^3(P^3, O(m-2)) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb


class OutOfRangeError(ValueError):
    """The closed form is only valid for twists >= -1."""


def h_p1(i: int, d: int) -> int:
    if i == 0:
        return max(0, d + 1)
    if i == 1:
        return max(0, -d - 1)
    raise ValueError("P^1 has cohomology only in degrees 0 and 1")


def h_p1xp1(i: int, p: int, q: int) -> int:
    """Künneth: sum over j + k = i of h^j(O(p)) h^k(O(q))."""
    if not 0 <= i <= 2:
        raise ValueError("P^1 x P^1 has cohomology only in degrees 0..2")
    return sum(h_p1(j, p) * h_p1(i - j, q) for j in range(2) if 0 <= i - j <= 1)


def h_p3(i: int, m: int) -> int:
    """h^i(P^3, O(m))."""
    if i == 0:
        return comb(m + 3, 3) if m >= 0 else 0
    if i == 3:
        return comb(-m - 1, 3) if m <= -4 else 0
    if i in (1, 2):
        return 0
    raise ValueError("P^3 has cohomology only in degrees 0..3")


def h_ideal_sheaf(i: int, twist: int, a: int, b: int) -> int:
    """h^i(P^3, I_A(twist)) for a on-quadric line arrangement of type (a, b)."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    if i not in (1, 2, 3):
        raise ValueError("only i = 1, 2, 3 are covered")
    if twist < -1:
        raise OutOfRangeError(f"twist {twist} is below the validity range (twist >= -1)")
    if i == 3:
        return h_p3(3, twist - 2)
    return h_p1xp1(i, twist - a, twist - b)


def reg_from_cohomology(a: int, b: int) -> int:
    """Least d with h^i(I_A(d - i)) = 0 for i = 1, 2, 3."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    cap = a + b + 2
    for d in range(1, cap + 1):
        # h^2(I_A(d-2)) >= a*b at d = 1, so the i = 3 term is only reached in range
        if all(h_ideal_sheaf(i, d - i, a, b) == 0 for i in (1, 2, 3)):
            return d
    raise RuntimeError(f"no vanishing found up to d = {cap}")


def acm_from_cohomology(a: int, b: int) -> bool:
    """h^1(I_A(m)) = 0 for every twist; twists beyond a + b + 2 vanish automatically."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    return all(h_ideal_sheaf(1, m, a, b) == 0 for m in range(-1, a + b + 3))


@dataclass
class CohomologyTable:
    """h^i(I_A(m)) for i = 1..3 over a range of twists."""

    a: int
    b: int
    twists: range
    values: dict = field(default_factory=dict)

    @classmethod
    def compute(cls, a: int, b: int, lo: int = -1, hi: int | None = None) -> CohomologyTable:
        hi = a + b + 2 if hi is None else hi
        table = cls(a, b, range(lo, hi + 1))
        for m in table.twists:
            for i in (1, 2, 3):
                table.values[(i, m)] = h_ideal_sheaf(i, m, a, b)
        return table

    def __getitem__(self, im) -> int:
        return self.values[im]

    def nonvanishing(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.values.items() if v)
