"""GL action on structure tensors and the Bianchi-type classification.

The action of an invertible matrix m on a candidate tensor is
q -> det(m) * m^T q m, the determinant-twisted congruence under which the
tensor transforms like its linear 1-form rescaled to track the transformed
bracket.  It preserves symmetric and skew parts separately, so the
classification reads off the disassembling: rank and inertia of the
symmetric part, presence of a charge, and for the rank-2 charged family a
single rational invariant rho with adj(S) = rho * a a^T.

Real-semantics splits (the plus/minus types) are decided over the
rationals by exact inertia counts; over fields other than the reals the
plus/minus splits would differ, which is why rho is reported as a signed
rational rather than a canonical normal-form parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import linalg
from .cohomology import coboundary_matrix
from .errors import NotLieError
from .exalg import rat
from .structures import StructureTensor, disassemble, require_lie

KIND_A0 = "A0"
KIND_A1 = "A1"
KIND_A2_PLUS = "A2plus"
KIND_A2_MINUS = "A2minus"
KIND_A3_PLUS = "A3plus"
KIND_A3_MINUS = "A3minus"
KIND_B0 = "B0"
KIND_B1 = "B1"
KIND_B2 = "B2"

_KINDS = {
    KIND_A0,
    KIND_A1,
    KIND_A2_PLUS,
    KIND_A2_MINUS,
    KIND_A3_PLUS,
    KIND_A3_MINUS,
    KIND_B0,
    KIND_B1,
    KIND_B2,
}


@dataclass(frozen=True)
class BianchiType:
    """Classification result; B2 carries the rational invariant rho.

    rho > 0 exactly when the rank-2 symmetric part is definite on its
    image (the elliptic family); rho < 0 gives the hyperbolic family.
    """

    kind: str
    rho: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown type kind {self.kind!r}")
        if self.kind == KIND_B2:
            if self.rho is None or self.rho == 0:
                raise ValueError("B2 requires a nonzero rho payload")
        elif self.rho is not None:
            raise ValueError(f"{self.kind} carries no payload")

    def __str__(self):
        if self.kind == KIND_B2:
            return f"B2(rho={self.rho})"
        return self.kind


@dataclass(frozen=True)
class GLTransform:
    """An invertible rational 3x3 matrix acting on structure tensors."""

    rows: Tuple[Tuple[Fraction, Fraction, Fraction], ...]

    def __init__(self, rows: Sequence[Sequence]):
        mat = tuple(tuple(rat(x) for x in row) for row in rows)
        if len(mat) != 3 or any(len(r) != 3 for r in mat):
            raise ValueError("a transform is a 3x3 matrix")
        object.__setattr__(self, "rows", mat)
        if self.det == 0:
            raise ValueError("transform must be invertible")

    @classmethod
    def identity(cls) -> "GLTransform":
        return cls(linalg.identity(3))

    @property
    def det(self) -> Fraction:
        return linalg.det3(self.rows)

    def matrix(self):
        return [list(row) for row in self.rows]

    def inverse(self) -> "GLTransform":
        return GLTransform(linalg.invert(self.matrix()))

    def then(self, other: "GLTransform") -> "GLTransform":
        """The transform acting like self followed by other."""
        return GLTransform(linalg.mat_mul(self.matrix(), other.matrix()))


def act(psi: GLTransform, q: StructureTensor) -> StructureTensor:
    """det(psi) * psi^T q psi.

    Satisfies act(p1, act(p2, q)) == act(p2.then(p1), q), preserves the
    Jacobi predicate, and leaves the classification invariant.
    """
    m = psi.matrix()
    out = linalg.scale(linalg.mat_mul(linalg.mat_mul(linalg.transpose(m), q.matrix()), m), psi.det)
    return StructureTensor(out)


def signature_counts(S) -> Tuple[int, int, int]:
    """Exact inertia (n_plus, n_minus, n_zero) of a symmetric matrix.

    Uses sign analysis of the characteristic polynomial; with all roots
    real the Descartes count is exact.
    """
    mat = S.matrix() if isinstance(S, StructureTensor) else [[rat(x) for x in row] for row in S]
    if not linalg.is_symmetric(mat):
        raise ValueError("signature_counts expects a symmetric matrix")
    trace = mat[0][0] + mat[1][1] + mat[2][2]
    minors = (
        mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1]
        + mat[0][0] * mat[2][2] - mat[0][2] * mat[2][0]
        + mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    )
    det = linalg.det3(mat)
    coeffs = [Fraction(1), -trace, minors, -det]
    n_zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        n_zero += 1
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    n_plus = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    n_minus = (3 - n_zero) - n_plus
    return n_plus, n_minus, n_zero


def b2_invariant(S, a) -> Fraction:
    """rho with adj(S) = rho * a a^T, for rank-2 symmetric S and a in ker S.

    Exactly invariant under the twisted congruence action.
    """
    mat = S.matrix() if isinstance(S, StructureTensor) else [[rat(x) for x in row] for row in S]
    vec = [rat(x) for x in a]
    if not linalg.is_symmetric(mat):
        raise ValueError("b2_invariant expects a symmetric matrix")
    if all(x == 0 for x in vec):
        raise ValueError("b2_invariant requires a nonzero kernel vector")
    if linalg.rank(mat) != 2:
        raise ValueError("b2_invariant requires a rank-2 symmetric part")
    if any(x != 0 for x in linalg.mat_vec(mat, vec)):
        raise ValueError("the vector must lie in the kernel of S")
    adj = linalg.adjugate3(mat)
    i = next(k for k, x in enumerate(vec) if x != 0)
    rho = adj[i][i] / (vec[i] * vec[i])
    # adj(S) has rank 1 with image ker S, so the dyad identity is forced
    assert all(
        adj[r][c] == rho * vec[r] * vec[c] for r in range(3) for c in range(3)
    )
    return rho


def classify(q: StructureTensor) -> BianchiType:
    """Bianchi type of a Lie structure tensor.

    First splits on the charge (skew part), then on rank and inertia of
    the symmetric part, following the two-step orbit description: orbits
    of symmetric forms, then charges attached to them.
    """
    require_lie(q)
    parts = disassemble(q)
    r = linalg.rank(parts.S.matrix())
    if all(x == 0 for x in parts.a):
        if r == 0:
            return BianchiType(KIND_A0)
        if r == 1:
            return BianchiType(KIND_A1)
        n_plus, n_minus, _ = signature_counts(parts.S)
        if r == 2:
            return BianchiType(KIND_A2_PLUS if 0 in (n_plus, n_minus) else KIND_A2_MINUS)
        return BianchiType(KIND_A3_PLUS if n_plus in (0, 3) else KIND_A3_MINUS)
    # a nonzero charge forces S a = 0, so rank(S) <= 2 here
    if r == 0:
        return BianchiType(KIND_B0)
    if r == 1:
        return BianchiType(KIND_B1)
    return BianchiType(KIND_B2, rho=b2_invariant(parts.S, parts.a))


def sym_algebra_dim(q: StructureTensor) -> int:
    """Dimension of the endomorphisms whose Lie derivative kills alpha_q.

    Kernel dimension of the 9 -> 9 coboundary map, hence
    9 - dim B2(q).
    """
    require_lie(q)
    return 9 - linalg.rank(coboundary_matrix(q))
