"""Spin-system Monte Carlo, partition-function zeros and the market
temperature/renormalization pipeline, backed by the C++ core."""

from spinmarket._core import *  # noqa: F401,F403
from spinmarket._core import __doc__  # noqa: F401
