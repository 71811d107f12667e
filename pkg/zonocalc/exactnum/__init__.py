from .rational import Rat, Point, rat, parse_rat, format_rat, floor_rat, ceil_rat, is_integral
from .cyclotomic import (
    Cyclo,
    as_cyclo,
    common_order,
    cyclo_embed,
    cyclo_from_root_power,
    cyclo_to_rational,
)
