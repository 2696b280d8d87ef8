"""Exact arithmetic in imaginary quadratic orders.

Two shapes of order are supported, both written as ``Z[w]``:

* ``SQRT`` form, ``w = sqrt(-D)`` with ``w**2 + D = 0``;
* ``HALF`` form, ``w = (1 + sqrt(1 - 4D)) / 2`` with ``w**2 - w + D = 0``.

Elements are ``a + b*w`` with Python integers, so nothing ever wraps.
The order ``Z[d*i]`` is the SQRT form with ``D = d**2``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import isqrt

from .errors import InvalidParameter, ParseError, RingMismatch

__all__ = [
    "Form",
    "RingDesc",
    "QuadInt",
    "PellSolution",
    "make_ring",
    "gaussian_order",
    "qi_add",
    "qi_sub",
    "qi_neg",
    "qi_mul",
    "qi_conj",
    "norm_sq",
    "elements_up_to_norm",
    "pell_fundamental",
    "half_to_sqrt_partner",
    "parse_ring",
    "parse_element",
]


class Form(enum.Enum):
    SQRT = "sqrt"
    HALF = "half"


@dataclass(frozen=True)
class RingDesc:
    form: Form
    D: int

    def __post_init__(self):
        if not isinstance(self.D, int) or isinstance(self.D, bool):
            raise InvalidParameter(f"D must be an integer, got {self.D!r}")
        if self.D < 1:
            raise InvalidParameter(f"D must be >= 1, got {self.D}")

    def __str__(self) -> str:
        return f"{self.form.value}:{self.D}"

    @property
    def zero(self) -> QuadInt:
        return QuadInt(self, 0, 0)

    @property
    def one(self) -> QuadInt:
        return QuadInt(self, 1, 0)

    @property
    def w(self) -> QuadInt:
        return QuadInt(self, 0, 1)

    def __call__(self, a: int, b: int = 0) -> QuadInt:
        return QuadInt(self, a, b)

    def describe_w(self) -> str:
        """Human-readable value of the generator, e.g. ``2i`` for ``sqrt:4``."""
        if self.form is Form.SQRT:
            d = isqrt(self.D)
            if d * d == self.D:
                return "i" if d == 1 else f"{d}i"
            return f"sqrt(-{self.D})"
        return f"(1+sqrt(-{4 * self.D - 1}))/2"


def make_ring(form: Form | str, D: int) -> RingDesc:
    if isinstance(form, str):
        try:
            form = Form(form.lower())
        except ValueError:
            raise InvalidParameter(f"unknown ring form {form!r}") from None
    return RingDesc(form, D)


def gaussian_order(d: int) -> RingDesc:
    """``Z[d*i]``, encoded as SQRT with ``D = d**2`` so that ``w = d*i``."""
    if d < 1:
        raise InvalidParameter(f"d must be >= 1, got {d}")
    return RingDesc(Form.SQRT, d * d)


@dataclass(frozen=True)
class QuadInt:
    ring: RingDesc
    a: int
    b: int = 0

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return QuadInt(self.ring, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self) -> QuadInt:
        return QuadInt(self.ring, -self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, e = self.a, self.b, o.a, o.b
        D = self.ring.D
        if self.ring.form is Form.SQRT:
            return QuadInt(self.ring, a * c - D * b * e, a * e + b * c)
        return QuadInt(self.ring, a * c - D * b * e, a * e + b * c + b * e)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+d}*w"

    def __repr__(self) -> str:
        return f"QuadInt({self.ring}, {self.a}, {self.b})"

    @property
    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def conj(self) -> QuadInt:
        if self.ring.form is Form.SQRT:
            return QuadInt(self.ring, self.a, -self.b)
        return QuadInt(self.ring, self.a + self.b, -self.b)

    def norm_sq(self) -> int:
        a, b, D = self.a, self.b, self.ring.D
        if self.ring.form is Form.SQRT:
            return a * a + D * b * b
        return a * a + a * b + D * b * b

    def is_unit(self) -> bool:
        return self.norm_sq() == 1

    def times_w(self) -> QuadInt:
        """Multiply by the generator; the ``w``-row of the regular representation."""
        if self.ring.form is Form.SQRT:
            return QuadInt(self.ring, -self.ring.D * self.b, self.a)
        return QuadInt(self.ring, -self.ring.D * self.b, self.a + self.b)

    def unit_inverse(self) -> QuadInt:
        if not self.is_unit():
            raise InvalidParameter(f"{self} is not a unit")
        return self.conj()


def qi_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def qi_sub(x: QuadInt, y: QuadInt) -> QuadInt:
    return x - y


def qi_neg(x: QuadInt) -> QuadInt:
    return -x


def qi_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def qi_conj(x: QuadInt) -> QuadInt:
    return x.conj()


def norm_sq(x: QuadInt) -> int:
    return x.norm_sq()


def elements_up_to_norm(ring: RingDesc, cap: int, *, include_zero: bool = False) -> list[QuadInt]:
    """All elements with ``norm_sq <= cap``, sorted by ``(norm_sq, a, b)``."""
    return [ring(a, b) for _, a, b in _norm_disc(ring.form, ring.D, cap, include_zero)]


def _norm_disc(form: Form, D: int, cap: int, include_zero: bool) -> list[tuple[int, int, int]]:
    out = []
    if cap < 0:
        return out
    if form is Form.SQRT:
        bmax = isqrt(cap // D)
        for b in range(-bmax, bmax + 1):
            rest = cap - D * b * b
            amax = isqrt(rest)
            for a in range(-amax, amax + 1):
                out.append((a * a + D * b * b, a, b))
    else:
        # 4N = (2a + b)**2 + (4D - 1) b**2
        k = 4 * D - 1
        bmax = isqrt(4 * cap // k)
        for b in range(-bmax, bmax + 1):
            rest = 4 * cap - k * b * b
            if rest < 0:
                continue
            s = isqrt(rest)
            # -s <= 2a + b <= s
            lo = -((s + b) // 2)
            hi = (s - b) // 2
            for a in range(lo, hi + 1):
                out.append((a * a + a * b + D * b * b, a, b))
    if not include_zero:
        out = [t for t in out if t[0] != 0]
    out.sort()
    return out


# --- Pell -------------------------------------------------------------------


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int


def pell_fundamental(D: int) -> PellSolution | None:
    """Minimal positive solution of ``x**2 - D*y**2 = 1``; ``None`` for square ``D``.

    Walks the periodic continued fraction of ``sqrt(D)`` and tests each
    convergent; the fundamental solution is always a convergent.
    """
    if D < 1:
        raise InvalidParameter(f"D must be >= 1, got {D}")
    a0 = isqrt(D)
    if a0 * a0 == D:
        return None
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return PellSolution(p, q)


def half_to_sqrt_partner(D: int) -> int:
    """Parameter ``4D - 1`` of the SQRT order attached to ``half:D``."""
    if D < 1:
        raise InvalidParameter(f"D must be >= 1, got {D}")
    return 4 * D - 1


# --- text encodings -----------------------------------------------------------

_RING_RE = re.compile(r"\s*(sqrt|half)\s*:\s*(\d+)\s*", re.IGNORECASE)
_TERM = r"(?:\d+(?:\*?w)?|w)"
_ELEM_RE = re.compile(rf"[+-]?{_TERM}(?:[+-]{_TERM})*")
_TERM_RE = re.compile(r"([+-]?)(\d*)(\*?w)?")
_SPLIT_DIGITS_RE = re.compile(r"\d\s+\d")


def parse_ring(text: str) -> RingDesc:
    m = _RING_RE.fullmatch(text)
    if not m:
        raise ParseError(f"bad ring {text!r}; expected sqrt:D or half:D")
    return make_ring(m.group(1), int(m.group(2)))


def parse_element(ring: RingDesc, text: str) -> QuadInt:
    """Parse ``a+b*w`` (whitespace and term order are free; ``w`` may stand alone)."""
    s = "".join(text.split())
    if _SPLIT_DIGITS_RE.search(text) or not _ELEM_RE.fullmatch(s):
        raise ParseError(f"bad element {text!r}; expected a+b*w")
    a = b = 0
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        sign, digits, wpart = m.groups()
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        if wpart:
            b += coeff
        else:
            a += coeff
        pos = m.end()
    return QuadInt(ring, a, b)
