"""Truncated generating series of K-theoretic integrals over handsaw and chainsaw
quiver varieties, computed by fixed-point localization, and coefficient-wise
checks of their wall-crossing and hypergeometric transformation formulas."""

from .report import VerdictReport
from .scalars import EvalContext, Mode, sample_context
from .series import PSeries

__version__ = "0.1.0"

__all__ = ["EvalContext", "Mode", "PSeries", "VerdictReport", "sample_context", "__version__"]
