import pytest

from arrangement_reg.cohomology import (
    CohomologyTable,
    OutOfRangeError,
    acm_from_cohomology,
    h_ideal_sheaf,
    h_p1,
    h_p1xp1,
    h_p3,
    reg_from_cohomology,
)


def test_h_p1_examples():
    assert h_p1(0, 3) == 4
    assert h_p1(1, -1) == 0
    assert h_p1(1, -2) == 1
    assert h_p1(0, -1) == 0
    with pytest.raises(ValueError):
        h_p1(2, 0)


def test_h_p1_serre_duality():
    for d in range(-10, 11):
        assert h_p1(1, d) == h_p1(0, -2 - d)
        assert h_p1(0, d) - h_p1(1, d) == d + 1


def test_h_p1xp1_examples():
    assert h_p1xp1(0, 0, 0) == 1
    assert h_p1xp1(1, 0, -2) == 1
    assert h_p1xp1(2, -2, -2) == 1
    with pytest.raises(ValueError):
        h_p1xp1(3, 0, 0)


def test_h_p1xp1_symmetry_and_serre_duality():
    for p in range(-10, 11):
        for q in range(-10, 11):
            for i in range(3):
                assert h_p1xp1(i, p, q) == h_p1xp1(i, q, p)
                assert h_p1xp1(i, p, q) == h_p1xp1(2 - i, -2 - p, -2 - q)
            # Euler characteristic (p + 1)(q + 1)
            chi = h_p1xp1(0, p, q) - h_p1xp1(1, p, q) + h_p1xp1(2, p, q)
            assert chi == (p + 1) * (q + 1)


def test_h_p3():
    assert h_p3(0, 2) == 10
    assert h_p3(3, -4) == 1
    assert h_p3(3, -5) == 4
    assert h_p3(3, -3) == 0
    assert h_p3(1, 5) == 0


def test_h_ideal_sheaf_examples():
    # (a, b) = (2, 4), i = 1 at twist 2: h^1(O(0, -2)) = 1
    assert h_ideal_sheaf(1, 2, 2, 4) == 1
    assert all(h_ideal_sheaf(1, m, 2, 2) == 0 for m in range(-1, 12))
    a, b = 3, 5
    # h^2(I(d - 2)) at d = a is nonzero, at d = a + 1 it vanishes
    assert h_ideal_sheaf(2, a - 2, a, b) != 0
    assert h_ideal_sheaf(2, a + 1 - 2, a, b) == 0


def test_h_ideal_sheaf_refuses_outside_range():
    with pytest.raises(OutOfRangeError):
        h_ideal_sheaf(1, -2, 2, 3)
    with pytest.raises(ValueError):
        h_ideal_sheaf(0, 1, 2, 3)
    with pytest.raises(ValueError):
        h_ideal_sheaf(1, 1, 3, 2)


def test_h3_vanishes_in_range():
    assert all(h_ideal_sheaf(3, m, 2, 3) == 0 for m in range(-1, 10))


@pytest.mark.parametrize("ab,reg", [((1, 1), 2), ((3, 5), 5), ((4, 4), 5)])
def test_reg_examples(ab, reg):
    assert reg_from_cohomology(*ab) == reg


@pytest.mark.parametrize("ab,acm", [((3, 3), True), ((3, 4), True), ((3, 6), False)])
def test_acm_examples(ab, acm):
    assert acm_from_cohomology(*ab) is acm


def brute_reg(a, b):
    # the regularity definition with the Künneth products written out by hand
    def h1(m):
        p, q = m - a, m - b
        return max(0, p + 1) * max(0, -q - 1) + max(0, -p - 1) * max(0, q + 1)

    def h2(m):
        return max(0, -(m - a) - 1) * max(0, -(m - b) - 1)

    d = 2
    while h1(d - 1) or h2(d - 2) or any(h1(e - 1) or h2(e - 2) for e in range(d, d + 5)):
        d += 1
    return d


def test_regularity_formula_exhaustive():
    for a in range(1, 51):
        for b in range(a, 51):
            r = reg_from_cohomology(a, b)
            assert r == max(a + 1, b)
            assert r == brute_reg(a, b)
            assert acm_from_cohomology(a, b) == (b - a <= 1)


def test_cohomology_table():
    T = CohomologyTable.compute(2, 5)
    assert T[(1, 2)] == h_ideal_sheaf(1, 2, 2, 5)
    assert (1, 2) in T.nonvanishing()
    assert all(i in (1, 2) for i, _ in T.nonvanishing())


def test_bad_types_rejected():
    with pytest.raises(ValueError):
        reg_from_cohomology(4, 3)
    with pytest.raises(ValueError):
        acm_from_cohomology(0, 3)
