"""Seeded random generators for property checks.

Samples are rational with entries in [-3, 3] and denominators up to 3,
small enough that exact arithmetic stays fast.  The same generators back
the CLI self-test and the acceptance suite, keyed by an integer seed
(environment variable BIANCHI_SEED, default 42).
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from . import linalg
from .classify import GLTransform
from .structures import StructureTensor, skew_from_axial

DEFAULT_SEED = 42


def seed_from_env() -> int:
    raw = os.environ.get("BIANCHI_SEED", "")
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


def random_fraction(rng: random.Random) -> Fraction:
    den = rng.randint(1, 3)
    return Fraction(rng.randint(-3 * den, 3 * den), den)


def random_tensor(rng: random.Random) -> StructureTensor:
    return StructureTensor([[random_fraction(rng) for _ in range(3)] for _ in range(3)])


def random_symmetric(rng: random.Random) -> StructureTensor:
    m = linalg.zeros(3, 3)
    for i in range(3):
        for j in range(i, 3):
            m[i][j] = m[j][i] = random_fraction(rng)
    return StructureTensor(m)


def random_vector(rng: random.Random):
    return tuple(random_fraction(rng) for _ in range(3))


def random_lie_tensor(rng: random.Random) -> StructureTensor:
    """Random Lie structure covering all types.

    Either purely symmetric, or a symmetric part projected to kill a
    random nonzero charge (so the Jacobi constraint S a = 0 holds exactly).
    """
    branch = rng.randrange(4)
    if branch == 0:
        return random_symmetric(rng)
    if branch == 1:
        return skew_from_axial(random_vector(rng))
    a = random_vector(rng)
    if all(x == 0 for x in a):
        a = (Fraction(1), Fraction(0), Fraction(0))
    s0 = random_symmetric(rng).matrix()
    norm = sum(x * x for x in a)
    proj = [
        [
            (Fraction(1) if i == j else Fraction(0)) - a[i] * a[j] / norm
            for j in range(3)
        ]
        for i in range(3)
    ]
    s = linalg.mat_mul(linalg.mat_mul(proj, s0), proj)
    return StructureTensor(s) + skew_from_axial(a)


def random_constrained_candidate(rng: random.Random) -> StructureTensor:
    """Random candidate built as S + charge with S a = 0 (hence Lie)."""
    q = random_lie_tensor(rng)
    return q


def random_invertible(rng: random.Random) -> GLTransform:
    while True:
        m = [[random_fraction(rng) for _ in range(3)] for _ in range(3)]
        if linalg.det3(m) != 0:
            return GLTransform(m)
