"""Compatibility varieties, stratified fiber structure, and deformations.

The compatibility variety of a Lie structure c is the set of Lie
structures whose sum with c is again Lie: the cone cut out of the
2-cocycle space of c by the Jacobi equations.  Membership is decided
operationally (span test against a cocycle basis plus the Jacobi
predicate) rather than through an ideal-theoretic description.

Projecting a member onto its symmetric part exhibits the variety as a
stratified family: over each symmetric base point the set of admissible
charges is an affine subspace whose dimension jumps on closed strata.
``strat_report`` emits the catalogued strata for each normal form and
``zeta_fiber_dim`` computes any single fiber exactly, so the catalogue is
independently checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import linalg
from .classify import BianchiType, GLTransform, act, classify
from .cohomology import cohomology_report
from .errors import IncompatibleDirectionError, StratumCrossingError, UnsupportedFormError
from .exalg import rat
from .structures import (
    StructureTensor,
    compat_pairing,
    disassemble,
    half_square_tensor,
    is_lie,
    require_lie,
    sym_product_tensor,
    tensor_to_vec,
)


@dataclass(frozen=True)
class CompatibilityVariety:
    """Operational membership test for the structures compatible with base."""

    base: StructureTensor
    z2_basis: Tuple[StructureTensor, ...]

    def __post_init__(self):
        rows = [tensor_to_vec(t) for t in self.z2_basis]
        span, pivots = linalg.rref(rows) if rows else ([], [])
        span = span[: len(pivots)]
        object.__setattr__(self, "_span_rows", span)
        object.__setattr__(self, "_span_pivots", pivots)

    def member(self, q: StructureTensor) -> bool:
        if not linalg.in_row_span(self._span_rows, self._span_pivots, tensor_to_vec(q)):
            return False
        return is_lie(q)


def compatibility_variety(q: StructureTensor) -> CompatibilityVariety:
    require_lie(q)
    report = cohomology_report(q)
    return CompatibilityVariety(base=q, z2_basis=report.basis_Z2)


def zeta_fiber_dim(c: StructureTensor, base: StructureTensor) -> Optional[int]:
    """Dimension of the charge fiber of the compatibility variety of c
    over a symmetric base point, or None when the fiber is empty.

    The fiber is the affine set of axial vectors a' with
    S_base a' = 0 (Jacobi for the candidate) and
    S_c a' = -S_base a_c (cocycle condition against c).
    """
    require_lie(c)
    if not base.is_symmetric:
        raise ValueError("the base point must be a symmetric tensor")
    parts = disassemble(c)
    s_c = parts.S.matrix()
    s_g = base.matrix()
    rhs_tail = [-x for x in linalg.mat_vec(s_g, list(parts.a))]
    system = [list(row) for row in s_g] + [list(row) for row in s_c]
    rhs = [Fraction(0)] * 3 + rhs_tail
    solved = linalg.solve_affine(system, rhs)
    if solved is None:
        return None
    return solved[1]


# -- normal forms ----------------------------------------------------------

def _squarefree_scale(d: Fraction) -> Fraction:
    """t > 0 with t^2 * d a squarefree integer (best effort for huge factors)."""
    p, q = d.numerator, d.denominator
    n = abs(p * q)
    square = 1
    f = 2
    while f * f <= n and f <= 10_000:
        while n % (f * f) == 0:
            n //= f * f
            square *= f
        f += 1
    return Fraction(q, square)


def _complete_with_last(a):
    """Invertible matrix whose last column is a, first two standard vectors."""
    for i in range(3):
        for j in range(i + 1, 3):
            cols = sorted(set(range(3)) - {i, j})
            k = cols[0]
            if a[k] != 0:
                m = linalg.zeros(3, 3)
                m[i][0] = Fraction(1)
                m[j][1] = Fraction(1)
                for r in range(3):
                    m[r][2] = a[r]
                if linalg.det3(m) != 0:
                    return m
    raise ValueError("zero vector cannot be completed to a basis")


def normalize(q: StructureTensor) -> Tuple[GLTransform, StructureTensor]:
    """Transform carrying q to a catalogued normal form, and the result.

    The normalized tensor has a diagonal symmetric part with nonzero
    entries first (a common rational multiple of squarefree integers) and
    a charge along the third axis (or zero).  When the charge vanishes the
    overall sign is chosen so positives do not trail negatives on the
    diagonal.  Fully deterministic.
    """
    require_lie(q)
    parts = disassemble(q)
    s = parts.S.matrix()
    a = list(parts.a)
    charged = any(x != 0 for x in a)

    if charged:
        m0 = _complete_with_last(a)
        t = linalg.mat_mul(linalg.mat_mul(linalg.transpose(m0), s), m0)
        block = [[t[0][0], t[0][1]], [t[1][0], t[1][1]]]
        pb = linalg.congruence_diagonalize(block)
        embed = linalg.identity(3)
        for i in range(2):
            for j in range(2):
                embed[i][j] = pb[i][j]
        p = linalg.mat_mul(m0, embed)
        movable = 2
    else:
        p = linalg.congruence_diagonalize(s)
        movable = 3

    d = linalg.mat_mul(linalg.mat_mul(linalg.transpose(p), s), p)
    order = sorted(range(movable), key=lambda i: (d[i][i] == 0, i))
    perm = linalg.zeros(3, 3)
    for new, old in enumerate(order):
        perm[old][new] = Fraction(1)
    for i in range(movable, 3):
        perm[i][i] = Fraction(1)
    p = linalg.mat_mul(p, perm)

    d = linalg.mat_mul(linalg.mat_mul(linalg.transpose(p), s), p)
    scalecols = linalg.identity(3)
    for i in range(movable):
        if d[i][i] != 0:
            scalecols[i][i] = _squarefree_scale(d[i][i])
    p = linalg.mat_mul(p, scalecols)

    psi = GLTransform(p)
    result = act(psi, q)
    if not charged:
        diag = [result.rows[i][i] for i in range(3)]
        nonzero = [x for x in diag if x != 0]
        n_plus = sum(1 for x in nonzero if x > 0)
        n_minus = len(nonzero) - n_plus
        if nonzero and (n_minus > n_plus or (n_minus == n_plus and nonzero[0] < 0)):
            psi = GLTransform(linalg.scale(p, -1))
            result = act(psi, q)
    return psi, result


# -- stratification --------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    """One stratum of symmetric base points with its constant fiber size.

    ``fiber_dim`` is None when no member of the variety projects onto the
    stratum; ``representative`` is a base point (in normalized
    coordinates) on which the claim can be rechecked with
    :func:`zeta_fiber_dim`.
    """

    label: str
    fiber_dim: Optional[int]
    representative: Optional[StructureTensor]
    note: str = ""


@dataclass(frozen=True)
class StratReport:
    base_type: BianchiType
    normalized: StructureTensor
    transform: GLTransform
    strata: Tuple[Stratum, ...]


def _rational_sqrt(f: Fraction) -> Optional[Fraction]:
    if f < 0:
        return None
    pn = math.isqrt(f.numerator)
    pd = math.isqrt(f.denominator)
    if pn * pn == f.numerator and pd * pd == f.denominator:
        return Fraction(pn, pd)
    return None


def strat_report(q: StructureTensor) -> StratReport:
    """Catalogued fiber dimensions of the charge projection over the base
    strata, in normalized coordinates.
    """
    require_lie(q)
    psi, qn = normalize(q)
    parts = disassemble(qn)
    s = parts.S.matrix()
    if any(s[i][j] != 0 for i in range(3) for j in range(3) if i != j):
        raise UnsupportedFormError("normalization did not diagonalize the symmetric part")
    if any(parts.a[i] != 0 for i in range(2)):
        raise UnsupportedFormError("normalization did not align the charge with the third axis")
    kind = classify(qn)
    d1, d2 = s[0][0], s[1][1]
    hs = half_square_tensor

    if kind.kind == "A0":
        strata = (
            Stratum("origin", 3, StructureTensor.zero(), "every charge is admissible"),
            Stratum("rank1", 2, hs(1)),
            Stratum("rank2", 1, hs(1) + hs(2)),
            Stratum("rank3", 0, hs(1) + hs(2) + hs(3)),
        )
    elif kind.kind == "A1":
        strata = (
            Stratum("line", 2, hs(1), "multiples of the base form"),
            Stratum(
                "planes",
                1,
                hs(2),
                "planes spanned by the line and one rank-1 direction in its kernel plane",
            ),
            Stratum("generic", 0, hs(2) + hs(3)),
        )
    elif kind.kind in ("A2plus", "A2minus"):
        strata = (
            Stratum("s2", 1, hs(1), "symmetric forms supported on the (x1, x2) block"),
            Stratum("generic", 0, hs(3)),
        )
    elif kind.kind in ("A3plus", "A3minus"):
        strata = (Stratum("all", 0, StructureTensor.zero(), "only the zero charge anywhere"),)
    elif kind.kind == "B0":
        strata = (
            Stratum("origin", 3, StructureTensor.zero()),
            Stratum("quadric", 2, hs(1), "rank-1 points of the (x1, x2) block"),
            Stratum("s2_generic", 1, hs(1) + hs(2)),
            Stratum("outside", None, hs(3), "no member projects outside the block"),
        )
    elif kind.kind == "B1":
        strata = (
            Stratum("line", 2, hs(1), "multiples of the base symmetric part"),
            Stratum("quadric", 1, hs(2), "rank-1 points of the block off the line"),
            Stratum("s2_generic", 1, hs(1) + hs(2)),
            Stratum("outside", None, hs(3)),
        )
    elif kind.kind == "B2":
        entries = [
            Stratum("s2", 1, hs(1), "charge fiber is the third pure charge"),
        ]
        ratio_sqrt = _rational_sqrt(-d1 / d2)
        if ratio_sqrt is not None:
            e, f = ratio_sqrt.numerator, ratio_sqrt.denominator
            rep = e * sym_product_tensor(1, 3) + f * sym_product_tensor(2, 3)
            entries.append(
                Stratum(
                    "cone",
                    0,
                    rep,
                    "mixed quadric rays where the charge is uniquely determined",
                )
            )
        entries.append(Stratum("outside", None, hs(3)))
        strata = tuple(entries)
    else:  # pragma: no cover - the classification is exhaustive
        raise UnsupportedFormError(f"no stratum catalogue for {kind}")
    return StratReport(base_type=kind, normalized=qn, transform=psi, strata=strata)


# -- deformations ----------------------------------------------------------

@dataclass(frozen=True)
class DeformationPath:
    """A linear path (1 - t) c0 + t d sampled and classified at given t."""

    c0: StructureTensor
    d: StructureTensor
    samples: Tuple[Tuple[Fraction, BianchiType], ...]

    def point(self, t) -> StructureTensor:
        t = rat(t)
        return (1 - t) * self.c0 + t * self.d


def deform(c0: StructureTensor, d: StructureTensor, ts: Sequence) -> DeformationPath:
    """Classify the linear path toward d at each sample parameter.

    The direction must lie in the compatibility variety of c0, which for a
    linear path is equivalent to d being Lie and pairing to zero with c0;
    every sampled point is then Lie again (the Jacobi defect is quadratic
    along the segment) and this is re-verified per sample.
    """
    require_lie(c0)
    pairing = compat_pairing(c0, d)
    if not is_lie(d):
        raise IncompatibleDirectionError("direction tensor is not a Lie structure", pairing)
    if any(w != 0 for w in pairing):
        raise IncompatibleDirectionError(
            f"direction is not compatible with the base structure; pairing {pairing}",
            pairing,
        )
    samples = []
    for t in ts:
        t = rat(t)
        point = (1 - t) * c0 + t * d
        require_lie(point)
        samples.append((t, classify(point)))
    return DeformationPath(c0=c0, d=d, samples=tuple(samples))


def is_contraction(path: DeformationPath) -> bool:
    """Whether the type at t = 0 differs from the common type elsewhere.

    Requires a t = 0 sample and at least two nonzero samples; raises
    StratumCrossingError when the nonzero samples disagree (the caller
    must refine the path instead of interpreting it as a contraction).
    """
    zero_types = [ty for t, ty in path.samples if t == 0]
    nonzero = [(t, ty) for t, ty in path.samples if t != 0]
    if not zero_types or len(nonzero) < 2:
        raise ValueError("need a sample at t = 0 and at least two nonzero samples")
    distinct = {ty for _, ty in nonzero}
    if len(distinct) > 1:
        raise StratumCrossingError(
            f"nonzero samples take different types: {sorted(str(t) for t in distinct)}"
        )
    return zero_types[0] != next(iter(distinct))
