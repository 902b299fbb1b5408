"""Seeded random generators for sweeps.

Every stream is derived from a single seed plus a label, so any sweep is
reproducible from its configuration alone.
"""

from __future__ import annotations

import random
import zlib
from fractions import Fraction

import numpy as np

from .matrix import CC, HQ, QQ, GenericMatrix
from .poly import Polynomial
from .quat import Quaternion


def stream(seed: int, label: str) -> random.Random:
    return random.Random(f"{seed}:{label}")


def np_stream(seed: int, label: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, zlib.crc32(label.encode())])


def rational(rng: random.Random, bound: int = 3, denominators=(1, 1, 1, 2, 3)):
    num = rng.randint(-bound, bound)
    den = rng.choice(denominators)
    return num if den == 1 else Fraction(num, den)


def rational_matrix(rng, n: int, bound: int = 3, denominators=(1,)) -> GenericMatrix:
    return GenericMatrix(
        QQ,
        [[rational(rng, bound, denominators) for _ in range(n)] for _ in range(n)],
    )


def zero_diagonal_matrix(rng, n: int, bound: int = 3) -> GenericMatrix:
    rows = [[rng.randint(-bound, bound) if i != j else 0 for j in range(n)] for i in range(n)]
    return GenericMatrix(QQ, rows)


def traceless_matrix(rng, n: int, bound: int = 3) -> GenericMatrix:
    """Random traceless noncentral rational matrix."""
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        rows[n - 1][n - 1] = -sum(rows[i][i] for i in range(n - 1))
        m = GenericMatrix(QQ, rows)
        off = any(rows[i][j] != 0 for i in range(n) for j in range(n) if i != j)
        mixed = any(rows[i][i] != rows[0][0] for i in range(n))
        if off or mixed:
            return m


def exact_quaternion(rng, bound: int = 3) -> Quaternion:
    return Quaternion.exact(*(rng.randint(-bound, bound) for _ in range(4)))


def imaginary_quaternion(rng, norm: float) -> Quaternion:
    """Float purely imaginary quaternion with the given norm."""
    while True:
        parts = [rng.gauss(0.0, 1.0) for _ in range(3)]
        length = (parts[0] ** 2 + parts[1] ** 2 + parts[2] ** 2) ** 0.5
        if length > 1e-12:
            return Quaternion.of_floats(0.0, *(norm * c / length for c in parts))


def quaternion_matrix(rng, n: int, bound: int = 2) -> GenericMatrix:
    return GenericMatrix(
        HQ, [[exact_quaternion(rng, bound) for _ in range(n)] for _ in range(n)]
    )


def exact_polynomial(rng, degree: int, bound: int = 3) -> Polynomial:
    coeffs = [rng.randint(-bound, bound) for _ in range(degree)]
    lead = rng.choice([c for c in range(-bound, bound + 1) if c != 0])
    return Polynomial(coeffs + [lead])


def float_polynomial(rng, degree: int) -> Polynomial:
    coeffs = [rng.uniform(-2.0, 2.0) for _ in range(degree)]
    lead = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
    return Polynomial(coeffs + [lead])


def complex_gaussian_matrix(gen: np.random.Generator, n: int) -> np.ndarray:
    return (gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))) / np.sqrt(2.0)


def probe_like(rng, template):
    """Random element shaped like the template (used by the degree probe)."""
    if isinstance(template, GenericMatrix):
        ring = template.ring
        n = template.n
        if ring.name == QQ.name:
            return rational_matrix(rng, n)
        if ring.name.startswith("quaternion"):
            entries = [
                [exact_quaternion(rng, 2) for _ in range(n)] for _ in range(n)
            ]
            return GenericMatrix.from_rows(ring, entries)
        if ring.name == CC.name:
            return GenericMatrix.from_rows(
                ring,
                [
                    [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)]
                    for _ in range(n)
                ],
            )
        raise ValueError(f"no probe sampler for ring {ring.name}")
    if isinstance(template, Quaternion):
        q = exact_quaternion(rng)
        return q if template.is_exact() else q.to_float()
    if isinstance(template, (int, Fraction)):
        return Fraction(rng.randint(-9, 9))
    return rng.gauss(0.0, 1.0)
