"""Determinants over exact fields (sympy DomainMatrix) and complex floats (numpy LU)."""

from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from glmn_norm.core.scalars import (
    EPS,
    EPS_RING,
    EpsRationalFunction,
    Scalar,
    field_of,
    from_qq,
    to_qq,
)

Matrix = Sequence[Sequence[Scalar]]

EPS_FIELD = EPS_RING.to_field()
EPS_DOMAIN = EPS_FIELD.to_domain()


def _to_eps_domain(value: Scalar) -> Any:
    value = EPS.embed(value) if not isinstance(value, EpsRationalFunction) else value
    return EPS_FIELD.new(value.numerator.poly, value.denominator.poly)


def bareiss_det(rows: Matrix) -> Scalar:
    """Exact determinant by fraction-free elimination over QQ or QQ(eps)."""
    size = len(rows)
    if size == 0:
        return Fraction(1)
    if any(len(row) != size for row in rows):
        raise ValueError("determinant of a non-square matrix")
    entries = [value for row in rows for value in row]
    if field_of(entries) is EPS:
        matrix = DomainMatrix(
            [[_to_eps_domain(v) for v in row] for row in rows], (size, size), EPS_DOMAIN
        )
        value = matrix.det()
        return EpsRationalFunction._from_polys(value.numer, value.denom)
    matrix = DomainMatrix([[to_qq(v) for v in row] for row in rows], (size, size), QQ)
    return from_qq(matrix.det())


def complex_det(rows: Matrix) -> complex:
    if len(rows) == 0:
        return complex(1)
    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def determinant(rows: Matrix) -> Scalar:
    entries = [value for row in rows for value in row]
    if field_of(entries).is_exact:
        return bareiss_det(rows)
    return complex_det(rows)
