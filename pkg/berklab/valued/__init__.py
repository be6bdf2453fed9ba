from berklab.valued.fields import (
    INFINITY, Val, Coeff, FieldSpec, PAdicField, LaurentField,
    field_from_dict, format_val, parse_val
)
from berklab.valued.function_field import FpRational
from berklab.valued.polynomials import Poly, HomogeneousForm
from berklab.valued.newton import (
    newton_polygon, count_roots_by_valuation, count_roots_in_disk,
    distinct_root_count
)
from berklab.valued.resultant import (
    sylvester_matrix, determinant, resultant, form_resultant
)


def valuation(field: FieldSpec, c) -> Val:
    """v(c) in the given field, INFINITY for c = 0."""
    return field.valuation(field.element(c))


__all__ = [
    "INFINITY", "Val", "Coeff", "FieldSpec", "PAdicField", "LaurentField",
    "FpRational", "Poly", "HomogeneousForm", "field_from_dict", "format_val",
    "parse_val", "valuation", "newton_polygon", "count_roots_by_valuation",
    "count_roots_in_disk", "distinct_root_count", "sylvester_matrix",
    "determinant", "resultant", "form_resultant"
]
