"""Exact and numerical checks of the exponential characterization by
two-sided random shifts of order statistics.

Exact quantities (H-numbers, jets, residuals) are exchanged as
``fractions.Fraction``; jets are lists of raw derivatives at 0.
"""

from ._oschar import *  # noqa: F401,F403
from ._oschar import __doc__  # noqa: F401
