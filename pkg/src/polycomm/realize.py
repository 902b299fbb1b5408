"""Realizing prescribed matrices as p(AB) - p(BA).

Pipeline for a zero-diagonal matrix A' = G^-1 A G over an exact backend:
split A' = L - U into strict triangular parts, lift both to triangular
matrices L1 = L + p(D) and U1 = p(D) + U sharing the diagonal p(D) for a
central diagonal D with distinct p-values, diagonalize each by a
unitriangular similarity, and assemble (A1, B1) so that A1 B1 and B1 A1
are similar to D through the two unitriangular factors.  Then
p(A1 B1) - p(B1 A1) = G L1 G^-1 - G U1 G^-1 = A exactly.

Traceless matrices over the rationals reduce to the zero-diagonal case by
a recursive change of basis, so every traceless rational matrix is a
p-commutator for every nonconstant p.  The trace obstruction is the only
one over a field, but not over the quaternions: nonzero_trace_witness
builds diagonal quaternion pairs whose p-commutator has nonzero trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .matrix import QQ, HQ, GenericMatrix, poly_eval_matrix, poly_commutator
from .poly import Polynomial, eval_poly
from .quat import ONE, QI, QJ, QK, Quaternion, VerificationError
from .sampling import probe_like, stream


class DegreeNotBoundedError(ArithmeticError):
    """Probe exhausted every degree level without finding vanishing."""

    def __init__(self, m_max: int, pattern: dict):
        self.m_max = m_max
        self.vanish_pattern = pattern
        super().__init__(f"degree > {m_max}: no level vanished")


def pick_distinct_preimages(p: Polynomial, n: int) -> list:
    """First n integers (scan order 0, 1, -1, 2, -2, ...) with pairwise
    distinct values under p.  Each value collides at most deg(p) times, so
    the scan always terminates for nonconstant p."""
    if p.is_constant():
        raise ValueError("constant polynomial has a single value")
    if n < 1:
        raise ValueError("need at least one preimage")
    chosen: list = []
    seen = set()
    candidate = 0
    step = 0
    while len(chosen) < n:
        val = eval_poly(p, candidate)
        if val not in seen:
            seen.add(val)
            chosen.append(candidate)
        if candidate > 0:
            candidate = -candidate
        else:
            step += 1
            candidate = step
    return chosen


def _check_triangular(t: GenericMatrix, shape: str):
    zero = t.ring.zero()
    n = t.n
    for i in range(n):
        for j in range(n):
            wrong_side = j > i if shape == "lower" else j < i
            if wrong_side and t.rows[i][j] != zero:
                raise ValueError(f"entry ({i},{j}) breaks {shape}-triangular shape")
    diag = t.diagonal_entries()
    for i, s in enumerate(diag):
        if not t.ring.is_central(s):
            raise ValueError(f"diagonal entry {i} is not central")
    for i in range(n):
        for j in range(i + 1, n):
            if diag[i] == diag[j]:
                raise ValueError(f"diagonal entries {i} and {j} coincide")


def triangular_diagonalize(t: GenericMatrix, shape: str) -> GenericMatrix:
    """Unitriangular P (same shape as t) with P^-1 t P = diag(t).

    Needs central, pairwise distinct diagonal entries; each P entry then
    solves (t_ii - t_jj) P_ij = -(sum of already known products), a
    forward substitution since the stricter entries only reference rows
    between j and i.
    """
    if shape not in ("lower", "upper"):
        raise ValueError("shape must be 'lower' or 'upper'")
    _check_triangular(t, shape)
    ring, n = t.ring, t.n
    zero, one = ring.zero(), ring.one()
    diag = t.diagonal_entries()
    p_rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
    if shape == "lower":
        for j in range(n):
            for i in range(j + 1, n):
                s = zero
                for k in range(j, i):
                    s = s + t.rows[i][k] * p_rows[k][j]
                p_rows[i][j] = ring.inv(diag[i] - diag[j]) * (-s)
    else:
        for j in range(n):
            for i in range(j - 1, -1, -1):
                s = zero
                for k in range(i + 1, j + 1):
                    s = s + t.rows[i][k] * p_rows[k][j]
                p_rows[i][j] = ring.inv(diag[j] - diag[i]) * s
    p = GenericMatrix(ring, p_rows)
    if p.inverse() * t * p != GenericMatrix.diagonal(ring, diag):
        raise VerificationError("triangular diagonalization failed to verify")
    return p


def _strict_parts(m: GenericMatrix):
    zero = m.ring.zero()
    n = m.n
    lower = [[m.rows[i][j] if i > j else zero for j in range(n)] for i in range(n)]
    upper = [[m.rows[i][j] if i < j else zero for j in range(n)] for i in range(n)]
    return GenericMatrix(m.ring, lower), GenericMatrix(m.ring, upper)


@dataclass(frozen=True)
class RealizationWitness:
    """Matrices realizing target = p(a1 b1) - p(b1 a1).

    g conjugates the zero-diagonal core, g1 and g2 are the unitriangular
    similarities, d the central diagonal.  verify() recomputes every
    defining identity exactly.
    """

    p: Polynomial
    a1: GenericMatrix
    b1: GenericMatrix
    g: GenericMatrix
    g1: GenericMatrix
    g2: GenericMatrix
    d: GenericMatrix
    target: GenericMatrix

    def verify(self) -> bool:
        g_inv = self.g.inverse()
        g1_inv = self.g1.inverse()
        g2_inv = self.g2.inverse()
        if self.a1 != self.g * self.g1 * g2_inv * g_inv:
            return False
        if self.b1 != self.g * self.g2 * self.d * g1_inv * g_inv:
            return False
        ab = self.a1 * self.b1
        ba = self.b1 * self.a1
        if ab != self.g * (self.g1 * self.d * g1_inv) * g_inv:
            return False
        if ba != self.g * (self.g2 * self.d * g2_inv) * g_inv:
            return False
        p_d = poly_eval_matrix(self.p, self.d)
        p_ab = poly_eval_matrix(self.p, ab)
        p_ba = poly_eval_matrix(self.p, ba)
        if p_ab != self.g * (self.g1 * p_d * g1_inv) * g_inv:
            return False
        if p_ba != self.g * (self.g2 * p_d * g2_inv) * g_inv:
            return False
        vals = p_d.diagonal_entries()
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if vals[i] == vals[j]:
                    return False
        return p_ab - p_ba == self.target


def realize_zero_diagonal(
    p: Polynomial, a: GenericMatrix, g: GenericMatrix | None = None
) -> RealizationWitness:
    """Witness for a = p(A1 B1) - p(B1 A1), where g^-1 a g has zero diagonal.

    g defaults to the identity, i.e. a itself has zero diagonal.  Exact
    backends only; every identity is verified exactly before returning.
    """
    if p.is_constant():
        raise ValueError("polynomial must be nonconstant")
    if not a.ring.exact:
        raise ValueError("realization requires an exact backend")
    if a.n < 2:
        raise ValueError("need size at least 2")
    ring = a.ring
    if g is None:
        g = GenericMatrix.identity(ring, a.n)
    g_inv = g.inverse()
    a_prime = g_inv * a * g
    zero = ring.zero()
    for i in range(a.n):
        if a_prime.rows[i][i] != zero:
            raise ValueError(f"conjugated matrix has nonzero diagonal entry at {i}")

    alphas = pick_distinct_preimages(p, a.n)
    d = GenericMatrix.diagonal(ring, [ring.embed(al) for al in alphas])
    p_diag = GenericMatrix.diagonal(
        ring, [ring.embed(eval_poly(p, al)) for al in alphas]
    )
    lower, upper = _strict_parts(a_prime)
    l1 = lower + p_diag
    u1 = p_diag - upper
    g1 = triangular_diagonalize(l1, "lower")
    g2 = triangular_diagonalize(u1, "upper")
    a1 = g * g1 * g2.inverse() * g_inv
    b1 = g * g2 * d * g1.inverse() * g_inv
    witness = RealizationWitness(p, a1, b1, g, g1, g2, d, a)
    if not witness.verify():
        raise VerificationError("realization witness failed exact verification")
    return witness


def _matvec(a: GenericMatrix, v: Sequence[Fraction]):
    return [sum((row[j] * v[j] for j in range(a.n)), start=Fraction(0)) for row in a.rows]


def _in_span(w, v) -> bool:
    pivot = next((idx for idx, c in enumerate(v) if c != 0), None)
    if pivot is None:
        return all(c == 0 for c in w)
    lam = Fraction(w[pivot]) / Fraction(v[pivot])
    return all(Fraction(wc) == lam * Fraction(vc) for wc, vc in zip(w, v))


def _moving_vector(a: GenericMatrix):
    """Vector v with A v outside span(v); None only for scalar matrices.

    Standard basis vectors are tried first (one works unless A is
    diagonal), then pairwise sums (which separate distinct diagonal
    entries)."""
    n = a.n
    for c in range(n):
        if any(r != c and a.rows[r][c] != 0 for r in range(n)):
            return [Fraction(1) if idx == c else Fraction(0) for idx in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if a.rows[i][i] != a.rows[j][j]:
                return [
                    Fraction(1) if idx in (i, j) else Fraction(0) for idx in range(n)
                ]
    return None


def _extend_to_basis(vectors, n):
    """Greedily complete the given independent vectors with standard basis
    vectors, checked by exact elimination."""
    basis = []
    reduced = []  # (pivot index, reduced vector)

    def try_add(vec) -> bool:
        work = [Fraction(c) for c in vec]
        for pivot, red in reduced:
            if work[pivot] != 0:
                factor = work[pivot]
                work = [wc - factor * rc for wc, rc in zip(work, red)]
        pivot = next((idx for idx, c in enumerate(work) if c != 0), None)
        if pivot is None:
            return False
        inv = 1 / work[pivot]
        reduced.append((pivot, [inv * c for c in work]))
        basis.append(list(vec))
        return True

    for vec in vectors:
        if not try_add(vec):
            raise ValueError("given vectors are dependent")
    for idx in range(n):
        if len(basis) == n:
            break
        try_add([Fraction(1) if c == idx else Fraction(0) for c in range(n)])
    return basis


def _block_one_plus(q: GenericMatrix) -> GenericMatrix:
    ring = q.ring
    n = q.n + 1
    zero, one = ring.zero(), ring.one()
    rows = [[one] + [zero] * (n - 1)]
    for r in q.rows:
        rows.append([zero] + list(r))
    return GenericMatrix(ring, rows)


def _zero_diag_change(a: GenericMatrix) -> GenericMatrix:
    if a.is_zero():
        return GenericMatrix.identity(a.ring, a.n)
    v = _moving_vector(a)
    if v is None:
        # scalar and traceless over a char-0 field means zero, handled above
        raise ValueError("matrix is a nonzero scalar; it cannot be traceless")
    av = _matvec(a, v)
    basis = _extend_to_basis([v, av], a.n)
    p = GenericMatrix(a.ring, [list(col) for col in zip(*basis)])
    m = p.inverse() * a * p
    if a.n == 1:
        return p
    sub = GenericMatrix(a.ring, [row[1:] for row in m.rows[1:]])
    q = _zero_diag_change(sub)
    return p * _block_one_plus(q)


def traceless_to_zero_diagonal(a: GenericMatrix):
    """Change of basis (P, A') with A' = P^-1 A P of zero diagonal.

    Works over the rational backend for traceless input.  At every level
    some vector moves off its own line (else the matrix is scalar, hence
    zero by tracelessness in characteristic 0), and sending it to the
    first basis vector zeroes the leading diagonal entry; recursion
    handles the trailing block, whose trace is again zero.
    """
    if a.ring is not QQ:
        raise ValueError("traceless reduction runs on the rational backend")
    if a.trace() != 0:
        raise ValueError("matrix must be traceless")
    p = _zero_diag_change(a)
    a_prime = p.inverse() * a * p
    for i in range(a.n):
        if a_prime.rows[i][i] != 0:
            raise VerificationError("zero-diagonal reduction failed")
    return p, a_prime


def realize_traceless(p: Polynomial, a: GenericMatrix) -> RealizationWitness:
    """Witness for a traceless rational matrix as p(A1 B1) - p(B1 A1)."""
    change, _ = traceless_to_zero_diagonal(a)
    return realize_zero_diagonal(p, a, g=change)


_TRACE_CANDIDATES = (
    (QI, QJ),
    (QI, QI + QJ),
    (QJ, QK),
    (QI + QJ, QK),
    (ONE + QI, ONE + QJ),
    (ONE + 2 * QI, ONE + 2 * QJ),
)


def nonzero_trace_witness(p: Polynomial, n: int, seed: int = 0, attempts: int = 200):
    """Quaternion diagonal pair (a, b) with trace(p(ab) - p(ba)) != 0.

    a = diag(1, .., 1, alpha) and b = diag(1, .., 1, beta) leave the trace
    equal to p(alpha beta) - p(beta alpha); fixed candidates are scanned
    first, then seeded random rational quaternions.
    """
    if p.is_constant():
        raise ValueError("polynomial must be nonconstant")
    if n < 2:
        raise ValueError("need size at least 2")
    rng = stream(seed, "trace-witness")

    def candidates():
        yield from _TRACE_CANDIDATES
        for _ in range(attempts):
            yield (
                Quaternion.exact(*(rng.randint(-3, 3) for _ in range(4))),
                Quaternion.exact(*(rng.randint(-3, 3) for _ in range(4))),
            )

    for alpha, beta in candidates():
        delta = eval_poly(p, alpha * beta) - eval_poly(p, beta * alpha)
        if delta.is_zero():
            continue
        one = HQ.one()
        a = GenericMatrix.diagonal(HQ, [one] * (n - 1) + [alpha])
        b = GenericMatrix.diagonal(HQ, [one] * (n - 1) + [beta])
        tr = poly_commutator(p, a, b).trace()
        if tr != delta:
            raise VerificationError("diagonal trace identity failed")
        return a, b
    raise VerificationError(
        f"no trace witness found after {len(_TRACE_CANDIDATES)} fixed and "
        f"{attempts} random candidates"
    )


def _one_like(x):
    if isinstance(x, GenericMatrix):
        return GenericMatrix.identity(x.ring, x.n)
    if isinstance(x, Quaternion):
        return Quaternion.exact(1) if x.is_exact() else Quaternion.of_floats(1.0)
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    return 1.0


def _is_zero_element(x) -> bool:
    if isinstance(x, (GenericMatrix, Quaternion)):
        return x.is_zero()
    return x == 0


def _parity(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def algebraicity_polynomial(y0, probes: Sequence):
    """Alternating permutation sum detecting algebraicity.

    With m probes r_1..r_m the sum runs over all permutations d of
    {0..m}: sign(d) y0^d(0) r_1 y0^d(1) ... r_m y0^d(m).  It vanishes for
    every probe choice exactly when y0 is algebraic of degree <= m over
    the centre, so a single nonzero evaluation certifies degree > m.
    """
    m = len(probes)
    if m < 1:
        raise ValueError("need at least one probe")
    if m > 8:
        raise ValueError("probe count above 8 is not supported")
    powers = [_one_like(y0)]
    for _ in range(m):
        powers.append(powers[-1] * y0)
    total = None
    for perm in permutations(range(m + 1)):
        factors = []
        if perm[0] != 0:
            factors.append(powers[perm[0]])
        for idx in range(1, m + 1):
            factors.append(probes[idx - 1])
            if perm[idx] != 0:
                factors.append(powers[perm[idx]])
        term = factors[0]
        for f in factors[1:]:
            term = term * f
        if _parity(perm) > 0:
            total = term if total is None else total + term
        else:
            total = -term if total is None else total - term
    return total


@dataclass(frozen=True)
class DegreeProbeResult:
    estimated_degree: int
    trials_per_degree: int
    vanish_pattern: dict


def algebraic_degree_probe(
    a, m_max: int = 7, trials: int = 8, seed: int = 0
) -> DegreeProbeResult:
    """Least m whose algebraicity sum vanishes on every random trial.

    Vanishing at the true degree is an identity, so only the nonvanishing
    checks below it are probabilistic; with integer probes a false
    all-vanish at a smaller m has negligible probability, and the result
    records the per-level outcomes.
    """
    if m_max < 1 or m_max > 7:
        raise ValueError("m_max must be between 1 and 7")
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = stream(seed, "degree-probe")
    pattern: dict = {}
    for m in range(1, m_max + 1):
        all_vanish = True
        for _ in range(trials):
            probes = [probe_like(rng, a) for _ in range(m)]
            if not _is_zero_element(algebraicity_polynomial(a, probes)):
                all_vanish = False
                break
        pattern[m] = all_vanish
        if all_vanish:
            return DegreeProbeResult(m, trials, dict(pattern))
    raise DegreeNotBoundedError(m_max, pattern)
