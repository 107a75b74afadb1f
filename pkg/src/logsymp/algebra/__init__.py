from .chart import Chart
from .forms import (
    LogForm,
    LogMultiVec,
    contract,
    ext_derivative,
    iota,
    schouten,
    translate_chart,
    wedge,
    wedge_power,
)
from .parser import format_graded, parse_expr, parse_form, parse_multivec, parse_poly
from .ratfunc import RatFunc

__all__ = [
    "Chart",
    "LogForm",
    "LogMultiVec",
    "RatFunc",
    "contract",
    "ext_derivative",
    "format_graded",
    "iota",
    "parse_expr",
    "parse_form",
    "parse_multivec",
    "parse_poly",
    "schouten",
    "translate_chart",
    "wedge",
    "wedge_power",
]
