"""Exact coefficient rings: rationals, rational functions, matrices,
the quasimodular ring Q[E2,E4,E6], truncated q-series, and the sparse
multivariate kernel used by the Siegel layer.

Every value is immutable after construction and all arithmetic is exact
over Q; equality of canonical forms is structural.
"""

from .poly import Poly
from .ratfunc import RatFunc
from .matrix import Mat
from .mpoly import MPoly, MFrac
from .quasimodular import QuasiModular, QMRat, QSeries

__all__ = ["Poly", "RatFunc", "Mat", "MPoly", "MFrac", "QuasiModular", "QMRat", "QSeries"]
