"""2x2 matrices over a quadratic order, elementary moves and words.

Pairs are row vectors and ``E_2`` acts on them from the right:
``(alpha, beta) . M = (alpha*m11 + beta*m21, alpha*m12 + beta*m22)``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidMove, NotUnimodular, ParseError, RingMismatch
from .ring import QuadInt, RingDesc, parse_element

__all__ = [
    "Mat2",
    "Side",
    "ElemMove",
    "ElemWord",
    "UniPair",
    "identity",
    "mat_mul",
    "mat_det",
    "mat_inv_sl2",
    "elem_matrix",
    "word_to_matrix",
    "is_L2",
    "act_row",
    "S_WORD_TEXT",
    "s_matrix",
    "s_word",
    "parse_matrix",
    "parse_word",
    "parse_pair",
]


@dataclass(frozen=True)
class Mat2:
    m11: QuadInt
    m12: QuadInt
    m21: QuadInt
    m22: QuadInt

    def __post_init__(self):
        r = self.m11.ring
        if not (self.m12.ring == self.m21.ring == self.m22.ring == r):
            raise RingMismatch("matrix entries live in different rings")

    @classmethod
    def of(cls, ring: RingDesc, rows) -> Mat2:
        """Build from nested rows of ints, ``(a, b)`` tuples or QuadInts."""
        (p, q), (r, s) = rows
        return cls(*(_lift(ring, x) for x in (p, q, r, s)))

    @property
    def ring(self) -> RingDesc:
        return self.m11.ring

    @property
    def top_row(self) -> UniPair:
        return UniPair(self.m11, self.m12)

    def __matmul__(self, other: Mat2) -> Mat2:
        return mat_mul(self, other)

    def __str__(self) -> str:
        return f"[[{self.m11},{self.m12}],[{self.m21},{self.m22}]]"

    def entries(self) -> tuple[QuadInt, QuadInt, QuadInt, QuadInt]:
        return (self.m11, self.m12, self.m21, self.m22)


def _lift(ring: RingDesc, x) -> QuadInt:
    if isinstance(x, QuadInt):
        if x.ring != ring:
            raise RingMismatch(f"{x.ring} vs {ring}")
        return x
    if isinstance(x, tuple):
        return ring(*x)
    return ring(x)


def identity(ring: RingDesc) -> Mat2:
    return Mat2(ring.one, ring.zero, ring.zero, ring.one)


def mat_mul(M: Mat2, N: Mat2) -> Mat2:
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    return Mat2(
        M.m11 * N.m11 + M.m12 * N.m21,
        M.m11 * N.m12 + M.m12 * N.m22,
        M.m21 * N.m11 + M.m22 * N.m21,
        M.m21 * N.m12 + M.m22 * N.m22,
    )


def mat_det(M: Mat2) -> QuadInt:
    return M.m11 * M.m22 - M.m12 * M.m21


def mat_inv_sl2(M: Mat2) -> Mat2:
    det = mat_det(M)
    if det != M.ring.one:
        raise NotUnimodular(f"det {det} != 1 for {M}")
    return Mat2(M.m22, -M.m12, -M.m21, M.m11)


def is_L2(M: Mat2) -> bool:
    one = M.ring.one
    return M.m11 == one and M.m22 == one and not M.m12


# --- elementary moves ---------------------------------------------------------


class Side(enum.Enum):
    UPPER = "U"
    LOWER = "L"


@dataclass(frozen=True)
class ElemMove:
    side: Side
    t: QuadInt

    def __post_init__(self):
        if not self.t:
            raise InvalidMove("elementary move with t = 0")

    def __str__(self) -> str:
        return f"{self.side.value}({self.t})"

    def inverse(self) -> ElemMove:
        return ElemMove(self.side, -self.t)


def elem_matrix(move: ElemMove) -> Mat2:
    ring = move.t.ring
    if move.side is Side.UPPER:
        return Mat2(ring.one, move.t, ring.zero, ring.one)
    return Mat2(ring.one, ring.zero, move.t, ring.one)


class ElemWord(tuple):
    """An immutable, normalized sequence of :class:`ElemMove`.

    Adjacent moves on the same side are merged and zero moves dropped on
    construction; no other free-group reduction is attempted.
    """

    def __new__(cls, moves: Iterable[ElemMove] = ()):
        out: list[ElemMove] = []
        for mv in moves:
            if out and out[-1].side is mv.side:
                t = out.pop().t + mv.t
                if t:
                    out.append(ElemMove(mv.side, t))
            else:
                out.append(mv)
        return super().__new__(cls, out)

    def __add__(self, other) -> ElemWord:
        return ElemWord(tuple(self) + tuple(other))

    def inverse(self) -> ElemWord:
        return ElemWord(mv.inverse() for mv in reversed(self))

    def __str__(self) -> str:
        return ";".join(str(mv) for mv in self)

    def __repr__(self) -> str:
        return f"ElemWord({str(self)!r})"


def word_to_matrix(w: Sequence[ElemMove], ring: RingDesc | None = None) -> Mat2:
    """Ordered product of the elementary matrices of ``w``.

    ``ring`` is only needed for the empty word.
    """
    if not w:
        if ring is None:
            raise InvalidMove("ring required to evaluate the empty word")
        return identity(ring)
    M = elem_matrix(w[0])
    for mv in w[1:]:
        M = mat_mul(M, elem_matrix(mv))
    return M


S_WORD_TEXT = "U(1);L(-1);U(1)"


def s_word(ring: RingDesc) -> ElemWord:
    """``U(1) L(-1) U(1)``, whose product is ``[[0,1],[-1,0]]``."""
    return ElemWord(
        [ElemMove(Side.UPPER, ring.one), ElemMove(Side.LOWER, -ring.one), ElemMove(Side.UPPER, ring.one)]
    )


def s_matrix(ring: RingDesc) -> Mat2:
    return Mat2(ring.zero, ring.one, -ring.one, ring.zero)


# --- pairs and the row action -------------------------------------------------


@dataclass(frozen=True)
class UniPair:
    alpha: QuadInt
    beta: QuadInt

    def __post_init__(self):
        if self.alpha.ring != self.beta.ring:
            raise RingMismatch("pair entries live in different rings")

    @classmethod
    def of(cls, ring: RingDesc, alpha, beta) -> UniPair:
        return cls(_lift(ring, alpha), _lift(ring, beta))

    @property
    def ring(self) -> RingDesc:
        return self.alpha.ring

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.alpha.a, self.alpha.b, self.beta.a, self.beta.b)

    @classmethod
    def from_key(cls, ring: RingDesc, key) -> UniPair:
        a1, b1, a2, b2 = key
        return cls(QuadInt(ring, a1, b1), QuadInt(ring, a2, b2))

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta})"


def act_row(p: UniPair, M: Mat2) -> UniPair:
    if p.ring != M.ring:
        raise RingMismatch(f"{p.ring} vs {M.ring}")
    return UniPair(p.alpha * M.m11 + p.beta * M.m21, p.alpha * M.m12 + p.beta * M.m22)


def act_move(p: UniPair, mv: ElemMove) -> UniPair:
    if mv.side is Side.UPPER:
        return UniPair(p.alpha, p.beta + p.alpha * mv.t)
    return UniPair(p.alpha + p.beta * mv.t, p.beta)


def act_word(p: UniPair, w: Iterable[ElemMove]) -> UniPair:
    for mv in w:
        p = act_move(p, mv)
    return p


# --- text encodings -----------------------------------------------------------

_MAT_RE = re.compile(r"\[\s*\[([^\[\]]*)\]\s*,\s*\[([^\[\]]*)\]\s*\]")
_MOVE_RE = re.compile(r"([UL])\s*\(([^()]*)\)")


def _split2(text: str, what: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad {what} {text!r}")
    return parts[0], parts[1]


def parse_matrix(ring: RingDesc, text: str) -> Mat2:
    m = _MAT_RE.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad matrix {text!r}; expected [[a,b],[c,d]]")
    p, q = _split2(m.group(1), "matrix row")
    r, s = _split2(m.group(2), "matrix row")
    return Mat2(*(parse_element(ring, x) for x in (p, q, r, s)))


def parse_pair(ring: RingDesc, text: str) -> UniPair:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"bad pair {text!r}; expected (a1+b1*w, a2+b2*w)")
    x, y = _split2(s[1:-1], "pair")
    return UniPair(parse_element(ring, x), parse_element(ring, y))


def parse_word(ring: RingDesc, text: str) -> ElemWord:
    """Parse ``U(t);L(t);...``; the empty string is the empty word."""
    moves = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _MOVE_RE.fullmatch(chunk)
        if not m:
            raise ParseError(f"bad move {chunk!r}; expected U(t) or L(t)")
        moves.append(ElemMove(Side(m.group(1)), parse_element(ring, m.group(2))))
    return ElemWord(moves)
