from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class ContentResult:
    """An infimum of covering costs.

    ``value`` is the correctly rounded sum of ``terms`` (the per-set costs of
    the optimal layout), or ``inf``.  When ``attained`` is false the infimum
    is only approached; ``witness`` then, if present, is the limiting layout.
    """

    value: float
    attained: bool
    witness: Optional[object] = None
    terms: tuple = ()
    method: str = ""

    @property
    def exact_value(self):
        """``value`` before rounding, as a Fraction (None when infinite)."""
        if math.isinf(self.value):
            return None
        return sum((Fraction(t) for t in self.terms), Fraction(0))

    def as_dict(self):
        w = self.witness
        if w is not None and hasattr(w, "as_list"):
            w = w.as_list()
        elif w is not None:
            w = [list(p) for p in w]
        return {
            "value": encode_float(self.value),
            "attained": self.attained,
            "witness_blocks": w,
            "method": self.method,
        }


def encode_float(x):
    """JSON-safe float: infinities become the string ``"inf"``."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x
