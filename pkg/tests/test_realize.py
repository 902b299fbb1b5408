import dataclasses
from fractions import Fraction

import pytest

from polycomm.matrix import CC, HQ, QQ, GenericMatrix, poly_commutator, poly_eval_matrix
from polycomm.poly import Polynomial
from polycomm.quat import QI, QJ, QK, Quaternion, VerificationError
from polycomm.realize import (
    DegreeNotBoundedError,
    algebraic_degree_probe,
    algebraicity_polynomial,
    nonzero_trace_witness,
    pick_distinct_preimages,
    realize_traceless,
    realize_zero_diagonal,
    traceless_to_zero_diagonal,
    triangular_diagonalize,
)
from polycomm.sampling import (
    exact_polynomial,
    exact_quaternion,
    quaternion_matrix,
    rational_matrix,
    stream,
    traceless_matrix,
    zero_diagonal_matrix,
)

SEED = 47417

X = Polynomial([0, 1])
X2 = Polynomial([0, 0, 1])
X3 = Polynomial([0, 0, 0, 1])


def qq(rows):
    return GenericMatrix.from_rows(QQ, rows)


def check_witness(w, p, target):
    assert w.verify()
    assert w.target == target
    assert poly_commutator(p, w.a1, w.b1) == target


def test_preimages_frozen():
    assert pick_distinct_preimages(X, 3) == [0, 1, -1]
    assert pick_distinct_preimages(X2, 2) == [0, 1]
    assert pick_distinct_preimages(X2, 5) == [0, 1, 2, 3, 4]
    # x^2 - x glues 0 with 1 and -1 with 2, so the scan skips ahead
    picks = pick_distinct_preimages(Polynomial([0, -1, 1]), 2)
    assert picks == [0, -1]
    assert [picks[0] * (picks[0] - 1), picks[1] * (picks[1] - 1)] == [0, 2]


def test_preimages_values_always_distinct():
    r = stream(SEED, "preimages")
    for _ in range(100):
        p = exact_polynomial(r, r.randint(1, 5))
        n = r.randint(1, 6)
        picks = pick_distinct_preimages(p, n)
        vals = [p(c) for c in picks]
        assert len(picks) == n
        assert len(set(vals)) == n


def test_preimages_guards():
    with pytest.raises(ValueError):
        pick_distinct_preimages(Polynomial([3]), 2)
    with pytest.raises(ValueError):
        pick_distinct_preimages(X, 0)


def test_triangular_diagonalize_frozen():
    p = triangular_diagonalize(qq([[0, 0], [1, 1]]), "lower")
    assert p == qq([[1, 0], [-1, 1]])
    p = triangular_diagonalize(qq([[0, -1], [0, 1]]), "upper")
    assert p == qq([[1, -1], [0, 1]])


def test_triangular_diagonalize_quaternion_entries():
    t = GenericMatrix.from_rows(HQ, [[0, 0, 0], [QI, 1, 0], [QJ, QK, 2]])
    p = triangular_diagonalize(t, "lower")
    d = GenericMatrix.diagonal(HQ, [0, 1, 2])
    assert p.inverse() * t * p == d
    # unitriangular with the same shape
    assert p[0, 0] == Quaternion.exact(1)
    assert p[0, 1] == Quaternion.exact() and p[0, 2] == Quaternion.exact()


def test_triangular_diagonalize_rejects():
    with pytest.raises(ValueError):
        triangular_diagonalize(qq([[0, 0], [1, 1]]), "diagonal")
    with pytest.raises(ValueError):
        triangular_diagonalize(qq([[0, 1], [1, 1]]), "lower")
    with pytest.raises(ValueError):
        triangular_diagonalize(qq([[1, 0], [1, 1]]), "lower")
    t = GenericMatrix.from_rows(HQ, [[QI, 0], [1, 1]])
    with pytest.raises(ValueError):
        triangular_diagonalize(t, "lower")


def test_triangular_diagonalize_random_sweep():
    r = stream(SEED, "tri-sweep")
    for _ in range(60):
        n = r.randint(2, 5)
        diag = list(range(n))
        r.shuffle(diag)
        rows = [
            [
                Fraction(r.randint(-3, 3), r.choice([1, 2]))
                if j < i
                else (diag[i] if i == j else 0)
                for j in range(n)
            ]
            for i in range(n)
        ]
        t = qq(rows)
        p = triangular_diagonalize(t, "lower")
        assert p.inverse() * t * p == GenericMatrix.diagonal(QQ, diag)


def test_realization_worked_example():
    a = qq([[0, 1], [0, 0]])
    w = realize_zero_diagonal(X2, a)
    assert w.d == GenericMatrix.diagonal(QQ, [0, 1])
    assert w.g == GenericMatrix.identity(QQ, 2)
    assert w.g1 == GenericMatrix.identity(QQ, 2)
    assert w.g2 == qq([[1, -1], [0, 1]])
    assert w.a1 == qq([[1, 1], [0, 1]])
    assert w.b1 == qq([[0, -1], [0, 1]])
    check_witness(w, X2, a)


def test_realization_of_zero_matrix():
    a = GenericMatrix.zeros(QQ, 2)
    w = realize_zero_diagonal(X2, a)
    assert w.a1 == GenericMatrix.identity(QQ, 2)
    assert w.b1 == w.d
    check_witness(w, X2, a)


def test_realization_rejects_bad_input():
    with pytest.raises(ValueError):
        realize_zero_diagonal(X2, qq([[1, 1], [0, -1]]))
    with pytest.raises(ValueError):
        realize_zero_diagonal(Polynomial([5]), qq([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        realize_zero_diagonal(X2, GenericMatrix.from_rows(CC, [[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        realize_zero_diagonal(X2, qq([[0]]))


def test_realization_with_conjugator():
    g = qq([[1, 1], [0, 1]])
    z = qq([[0, 0], [1, 0]])
    a = g * z * g.inverse()
    assert a.diagonal_entries() != (0, 0)
    w = realize_zero_diagonal(X2, a, g=g)
    assert w.g == g
    check_witness(w, X2, a)


def test_realization_sweep_with_intermediates():
    """The pipeline's internal identities: with L1 and U1 the strict parts
    of the conjugated matrix shifted by p(D), the products diagonalize to D
    and the polynomial images to p(D)."""
    r = stream(SEED, "realize-sweep")
    for _ in range(40):
        n = r.randint(2, 5)
        p = exact_polynomial(r, r.randint(1, 5))
        a = zero_diagonal_matrix(r, n)
        w = realize_zero_diagonal(p, a)
        check_witness(w, p, a)
        p_d = poly_eval_matrix(p, w.d)
        lower = qq(
            [[a[i, j] if i > j else 0 for j in range(n)] for i in range(n)]
        )
        upper = qq(
            [[a[i, j] if i < j else 0 for j in range(n)] for i in range(n)]
        )
        l1 = lower + p_d
        u1 = p_d - upper
        g_inv = w.g.inverse()
        ab = w.a1 * w.b1
        ba = w.b1 * w.a1
        assert poly_eval_matrix(p, ab) == w.g * l1 * g_inv
        assert poly_eval_matrix(p, ba) == w.g * u1 * g_inv
        assert ab == w.g * (w.g1 * w.d * w.g1.inverse()) * g_inv
        assert ba == w.g * (w.g2 * w.d * w.g2.inverse()) * g_inv


def test_realization_quaternion_ring():
    r = stream(SEED, "realize-hq")
    for _ in range(10):
        n = 3
        rows = [
            [exact_quaternion(r, 2) if i != j else 0 for j in range(n)]
            for i in range(n)
        ]
        a = GenericMatrix.from_rows(HQ, rows)
        w = realize_zero_diagonal(X3, a)
        check_witness(w, X3, a)


def test_witness_detects_tampering():
    w = realize_zero_diagonal(X2, qq([[0, 1], [0, 0]]))
    bad = dataclasses.replace(w, a1=GenericMatrix.identity(QQ, 2))
    assert not bad.verify()
    bad = dataclasses.replace(w, target=qq([[0, 2], [0, 0]]))
    assert not bad.verify()


def test_traceless_reduction_frozen():
    a = GenericMatrix.diagonal(QQ, [1, -1])
    p, a_prime = traceless_to_zero_diagonal(a)
    assert p == qq([[1, 1], [1, -1]])
    assert a_prime == qq([[0, 1], [1, 0]])
    assert p.inverse() * a * p == a_prime


def test_traceless_reduction_zero_matrix():
    a = GenericMatrix.zeros(QQ, 3)
    p, a_prime = traceless_to_zero_diagonal(a)
    assert p == GenericMatrix.identity(QQ, 3)
    assert a_prime.is_zero()


def test_traceless_reduction_guards():
    with pytest.raises(ValueError):
        traceless_to_zero_diagonal(qq([[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        traceless_to_zero_diagonal(GenericMatrix.diagonal(HQ, [QI, -QI]))


def test_traceless_reduction_sweep():
    r = stream(SEED, "traceless-sweep")
    for _ in range(60):
        n = r.randint(2, 5)
        a = traceless_matrix(r, n)
        p, a_prime = traceless_to_zero_diagonal(a)
        assert p.inverse() * a * p == a_prime
        assert all(a_prime[i, i] == 0 for i in range(n))


def test_realize_traceless_end_to_end():
    cases = [
        (X3, qq([[0, 1], [0, 0]])),
        (X2, GenericMatrix.diagonal(QQ, [1, -1])),
        (X2, qq([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])),
        (Polynomial([1, 2, 0, 1]), qq([[2, 1], [3, -2]])),
    ]
    for p, a in cases:
        w = realize_traceless(p, a)
        check_witness(w, p, a)


def test_realize_traceless_sweep():
    r = stream(SEED, "realize-traceless")
    for _ in range(25):
        n = r.randint(2, 4)
        p = exact_polynomial(r, r.randint(1, 4))
        a = traceless_matrix(r, n)
        w = realize_traceless(p, a)
        check_witness(w, p, a)


def test_trace_witness_frozen_linear():
    a, b = nonzero_trace_witness(X, 2)
    assert a == GenericMatrix.diagonal(HQ, [1, QI])
    assert b == GenericMatrix.diagonal(HQ, [1, QJ])
    assert poly_commutator(X, a, b).trace() == 2 * QK


def test_trace_witness_frozen_square():
    """x^2 kills the first candidate pair: (ij)^2 = (ji)^2 = -1.  The scan
    moves on to (i, i+j), whose squares differ by -4k."""
    a, b = nonzero_trace_witness(X2, 2)
    assert a == GenericMatrix.diagonal(HQ, [1, QI])
    assert b == GenericMatrix.diagonal(HQ, [1, QI + QJ])
    assert poly_commutator(X2, a, b).trace() == -4 * QK


def test_trace_witness_larger_size():
    p = Polynomial([0, 1, 1])
    a, b = nonzero_trace_witness(p, 3)
    assert a.n == 3
    tr = poly_commutator(p, a, b).trace()
    assert tr == 2 * QK
    assert not tr.is_zero()


def test_trace_witness_guards():
    with pytest.raises(ValueError):
        nonzero_trace_witness(Polynomial([2]), 2)
    with pytest.raises(ValueError):
        nonzero_trace_witness(X, 1)


def test_trace_witness_sweep_of_polynomials():
    r = stream(SEED, "trace-sweep")
    for _ in range(30):
        p = exact_polynomial(r, r.randint(1, 5))
        a, b = nonzero_trace_witness(p, 2, seed=SEED)
        assert not poly_commutator(p, a, b).trace().is_zero()


def test_algebraicity_level_one_is_the_commutator():
    r = stream(SEED, "alg-one")
    assert algebraicity_polynomial(QI, [QJ]) == -2 * QK
    for _ in range(30):
        y = exact_quaternion(r)
        probe = exact_quaternion(r)
        assert algebraicity_polynomial(y, [probe]) == probe * y - y * probe
    m = rational_matrix(r, 3)
    probe = rational_matrix(r, 3)
    assert algebraicity_polynomial(m, [probe]) == probe * m - m * probe


def test_algebraicity_vanishes_at_level_two_for_quaternions():
    r = stream(SEED, "alg-two")
    for _ in range(40):
        y = exact_quaternion(r)
        probes = [exact_quaternion(r), exact_quaternion(r)]
        assert algebraicity_polynomial(y, probes).is_zero()


def test_algebraicity_vanishes_at_level_one_for_scalars():
    r = stream(SEED, "alg-scalar")
    for _ in range(20):
        y = Fraction(r.randint(-9, 9), r.choice([1, 2, 3]))
        probe = Fraction(r.randint(-9, 9))
        assert algebraicity_polynomial(y, [probe]) == 0


def test_algebraicity_conjugation_invariance():
    r = stream(SEED, "alg-conj")
    for _ in range(20):
        y = rational_matrix(r, 2)
        probes = [rational_matrix(r, 2), rational_matrix(r, 2)]
        g = qq([[1, 1], [0, 1]])
        lhs = g * algebraicity_polynomial(y, probes) * g.inverse()
        conj = lambda m: g * m * g.inverse()
        rhs = algebraicity_polynomial(conj(y), [conj(q) for q in probes])
        assert lhs == rhs


def test_algebraicity_guards():
    with pytest.raises(ValueError):
        algebraicity_polynomial(QI, [])
    with pytest.raises(ValueError):
        algebraicity_polynomial(QI, [QJ] * 9)


def _flatten(m):
    out = []
    for row in m.rows:
        for v in row:
            out.append(Fraction(v))
    return out


def _rank(vectors):
    rows = [list(v) for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_col = 0
    for row_idx in range(len(rows)):
        while pivot_col < cols:
            pivot = next(
                (r for r in range(rank, len(rows)) if rows[r][pivot_col] != 0), None
            )
            if pivot is None:
                pivot_col += 1
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inv = 1 / rows[rank][pivot_col]
            rows[rank] = [inv * c for c in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][pivot_col] != 0:
                    f = rows[r][pivot_col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            rank += 1
            pivot_col += 1
            break
    return rank


def minimal_polynomial_degree(a):
    """Least k with I, A, .., A^k linearly dependent, by exact elimination."""
    powers = [_flatten(GenericMatrix.identity(a.ring, a.n))]
    acc = GenericMatrix.identity(a.ring, a.n)
    for k in range(1, a.n + 1):
        acc = acc * a
        powers.append(_flatten(acc))
        if _rank(powers) < len(powers):
            return k
    raise AssertionError("minimal polynomial degree exceeded the dimension")


def companion(coeffs_monic_tail):
    """Companion matrix of x^n - sum(tail), tail listed from degree 0."""
    n = len(coeffs_monic_tail)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i, c in enumerate(coeffs_monic_tail):
        rows[i][n - 1] = c
    return qq(rows)


def test_probe_frozen_values():
    assert algebraic_degree_probe(QJ).estimated_degree == 2
    assert algebraic_degree_probe(Fraction(5)).estimated_degree == 1
    assert algebraic_degree_probe(GenericMatrix.identity(QQ, 3)).estimated_degree == 1
    assert algebraic_degree_probe(GenericMatrix.diagonal(QQ, [1, 2])).estimated_degree == 2
    assert algebraic_degree_probe(qq([[0, 1], [0, 0]])).estimated_degree == 2
    cube = companion([2, 0, 0])  # x^3 = 2
    assert cube**3 == GenericMatrix.identity(QQ, 3).scale(2)
    assert algebraic_degree_probe(cube).estimated_degree == 3


def test_probe_matches_exact_minimal_polynomial():
    r = stream(SEED, "probe-oracle")
    cases = [
        GenericMatrix.diagonal(QQ, [3, 3, 3]),
        GenericMatrix.diagonal(QQ, [1, 1, 2]),
        companion([1, 1, 0, 0]),  # x^4 = x + 1
        qq([[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
    ]
    for _ in range(20):
        cases.append(rational_matrix(r, r.randint(2, 4)))
    for a in cases:
        expected = minimal_polynomial_degree(a)
        probed = algebraic_degree_probe(a, trials=3, seed=SEED)
        assert probed.estimated_degree == expected
        assert probed.vanish_pattern[expected] is True
        assert all(not probed.vanish_pattern[m] for m in range(1, expected))


def test_probe_quaternion_matrix():
    r = stream(SEED, "probe-hq")
    a = quaternion_matrix(r, 2)
    result = algebraic_degree_probe(a)
    assert 1 <= result.estimated_degree <= 4


def test_probe_reports_unbounded_degree():
    quintic = companion([2, 0, 0, 0, 0])  # x^5 = 2
    with pytest.raises(DegreeNotBoundedError) as info:
        algebraic_degree_probe(quintic, m_max=2)
    assert info.value.m_max == 2
    assert info.value.vanish_pattern == {1: False, 2: False}
    assert algebraic_degree_probe(quintic, m_max=5, trials=2).estimated_degree == 5


def test_probe_guards():
    with pytest.raises(ValueError):
        algebraic_degree_probe(QJ, m_max=0)
    with pytest.raises(ValueError):
        algebraic_degree_probe(QJ, m_max=8)
    with pytest.raises(ValueError):
        algebraic_degree_probe(QJ, trials=0)
