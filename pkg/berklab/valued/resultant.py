"""
Sylvester resultants over a FieldSpec.

Sign convention: Res(P, Q) is the determinant of the Sylvester matrix
whose first deg Q rows hold the coefficients of P (highest degree first)
and whose last deg P rows hold those of Q, so Res(z, z - 1) = -1.
"""
from typing import List, Sequence

from berklab.valued.fields import Coeff, FieldSpec
from berklab.valued.polynomials import HomogeneousForm, Poly

__all__ = ["sylvester_matrix", "determinant", "resultant", "form_resultant"]


def sylvester_matrix(
        field: FieldSpec, p: Sequence[Coeff], q: Sequence[Coeff]
) -> List[List[Coeff]]:
    """
    Sylvester matrix of two coefficient lists given highest degree first.
    """
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for k in range(n):
        rows.append([field.zero] * k + list(p) + [field.zero] * (size - m - 1 - k))
    for k in range(m):
        rows.append([field.zero] * k + list(q) + [field.zero] * (size - n - 1 - k))
    return rows


def determinant(field: FieldSpec, matrix: Sequence[Sequence[Coeff]]) -> Coeff:
    """
    Exact determinant by Gaussian elimination over the field.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    det = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        piv = a[col][col]
        det = det * piv
        inv = field.one / piv
        for r in range(col + 1, n):
            if not a[r][col]:
                continue
            factor = a[r][col] * inv
            row, prow = a[r], a[col]
            for j in range(col, n):
                if prow[j]:
                    row[j] = row[j] - factor * prow[j]
    return det


def resultant(P: Poly, Q: Poly) -> Coeff:
    """
    Resultant of two univariate polynomials; zero iff they share a factor
    (or one of them is the zero polynomial).
    """
    field = P.field
    if P.is_zero or Q.is_zero:
        return field.zero
    return determinant(
        field, sylvester_matrix(field, P.coeffs[::-1], Q.coeffs[::-1]))


def form_resultant(F: HomogeneousForm, G: HomogeneousForm) -> Coeff:
    """
    Homogeneous resultant of two binary forms, computed on the full slot
    lists so vanishing leading coefficients (common zero at infinity) give 0.
    """
    field = F.field
    if F.degree == 0 and G.degree == 0:
        return field.one
    return determinant(
        field, sylvester_matrix(field, F.coeffs[::-1], G.coeffs[::-1]))
