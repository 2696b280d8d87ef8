"""Exact arithmetic and E_2 orbit search over imaginary quadratic orders."""

from .errors import (
    E2Error,
    InvalidInput,
    InvalidMove,
    InvalidParameter,
    NotUnimodular,
    OutOfScopeRing,
    ParseError,
    RingMismatch,
)
from .ring import Form, QuadInt, RingDesc, gaussian_order, make_ring, pell_fundamental

__version__ = "0.1.0"
