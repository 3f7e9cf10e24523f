"""Binary linear codes in the NRT metric: LCD tests, constructions, bounds
and exhaustive search."""

from .code import NrtCode, dual_code, gram_matrix, is_lcd, is_lcd_oracle, min_distance, standard_form
from .gf2core import BitMatrix
from .nrtspace import NrtVector, Shape, nrt_inner, nrt_weight
from .search import SearchRecord, lcd_max_distance

__all__ = [
    "BitMatrix",
    "NrtCode",
    "NrtVector",
    "SearchRecord",
    "Shape",
    "dual_code",
    "gram_matrix",
    "is_lcd",
    "is_lcd_oracle",
    "lcd_max_distance",
    "min_distance",
    "nrt_inner",
    "nrt_weight",
    "standard_form",
]
