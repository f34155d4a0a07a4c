"""Degree-2 segment of the cochain complex attached to a Lie structure.

For a Lie structure c the coboundary of an endomorphism phi is the linear
bivector whose 1-form is the Lie derivative of alpha_c along the linear
vector field of phi; a linear bivector q' is a 2-cocycle of c when its
mixed Schouten bracket with c vanishes.  Both maps are exact rational
linear maps (9 -> 9 and 9 -> 3) and all dimensions and bases come from
canonical echelon-form elimination, so repeated runs produce identical
bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from . import exalg, linalg
from .structures import (
    StructureTensor,
    compat_pairing,
    disassemble,
    from_alpha_form,
    require_lie,
    skew_from_axial,
    tensor_to_vec,
    vec_to_tensor,
)


def coboundary(q: StructureTensor, phi) -> StructureTensor:
    """Coboundary of an endomorphism: the tensor of L_{X_phi}(alpha_q).

    Linear in phi; the result is always a 2-cocycle of q.
    """
    require_lie(q)
    return _coboundary_unchecked(q, phi)


def _coboundary_unchecked(q: StructureTensor, phi) -> StructureTensor:
    field = exalg.linear_vector_field(phi)
    derived = exalg.lie_derivative(field, q.alpha_form())
    return from_alpha_form(derived)


def coboundary_matrix(q: StructureTensor):
    """9x9 matrix of phi -> coboundary(q, phi) in the row-major entry basis."""
    cols = []
    for i in range(3):
        for j in range(3):
            phi = linalg.zeros(3, 3)
            phi[i][j] = 1
            cols.append(tensor_to_vec(_coboundary_unchecked(q, phi)))
    return linalg.transpose(cols)


def pairing_matrix(q: StructureTensor):
    """3x9 matrix of q' -> compat_pairing(q, q')."""
    cols = []
    for k in range(3):
        for h in range(3):
            basis = linalg.zeros(3, 3)
            basis[k][h] = 1
            cols.append(list(compat_pairing(q, StructureTensor(basis))))
    return linalg.transpose(cols)


@dataclass(frozen=True)
class CohomologyReport:
    """Dimensions and explicit bases of the 2-cocycles and 2-coboundaries."""

    dim_Z2: int
    dim_B2: int
    dim_H2: int
    basis_Z2: Tuple[StructureTensor, ...]
    basis_B2: Tuple[StructureTensor, ...]


def cohomology_report(q: StructureTensor) -> CohomologyReport:
    require_lie(q)
    pairing = pairing_matrix(q)
    z2_vectors = linalg.nullspace(pairing)
    image_rows = linalg.transpose(coboundary_matrix(q))
    b2_vectors = linalg.row_space_basis(image_rows)
    dim_z2 = len(z2_vectors)
    dim_b2 = len(b2_vectors)
    return CohomologyReport(
        dim_Z2=dim_z2,
        dim_B2=dim_b2,
        dim_H2=dim_z2 - dim_b2,
        basis_Z2=tuple(vec_to_tensor(v) for v in z2_vectors),
        basis_B2=tuple(vec_to_tensor(v) for v in b2_vectors),
    )


def zeta_fiber_basis(S) -> Tuple[StructureTensor, ...]:
    """Basis of the skew tensors whose axial vector kills a symmetric S.

    These are the pure charges compatible with the unimodular structure of
    S; there are 3 - rank(S) of them.
    """
    if isinstance(S, StructureTensor):
        mat = S.matrix()
    else:
        mat = [[exalg.rat(x) for x in row] for row in S]
    if not linalg.is_symmetric(mat):
        raise ValueError("zeta_fiber_basis expects a symmetric matrix")
    return tuple(skew_from_axial(v) for v in linalg.nullspace(mat))
