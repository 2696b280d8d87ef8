"""Bounded exploration of the right E_2 action on unimodular pairs.

Everything here is a semi-decision: positive answers carry a word that has
been re-checked exactly, negative answers (``NOT_FOUND``) only mean the
budget ran out and are never a proof of non-equivalence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from math import ceil

from . import _bfs
from .errors import InvalidInput, InvalidParameter, NotUnimodular, RingMismatch
from .linalg2 import (
    ElemMove,
    ElemWord,
    Mat2,
    Side,
    UniPair,
    act_word,
    mat_det,
    s_word,
    word_to_matrix,
)
from .ring import Form, QuadInt, RingDesc, elements_up_to_norm
from .unimodular import is_unimodular, trivial_variants

__all__ = [
    "SearchParams",
    "DEFAULT_PARAMS",
    "OrbitReport",
    "Outcome",
    "ReductionResult",
    "SearchResult",
    "orbit_bfs",
    "pairs_equivalent",
    "reduce_pair",
    "matrix_in_E2",
    "unit_diagonal_word",
]


@dataclass(frozen=True)
class SearchParams:
    state_norm_cap: int = 400
    gen_norm_cap: int = 16
    max_states: int = 100_000
    max_depth: int = 30

    def __post_init__(self):
        for name in ("state_norm_cap", "gen_norm_cap", "max_states", "max_depth"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise InvalidParameter(f"{name} must be a positive integer, got {v!r}")


DEFAULT_PARAMS = SearchParams()


def _generators(ring: RingDesc, gen_cap: int) -> list[tuple[int, int, int, int]]:
    """Kernel generator table ``(side, a, b, norm)`` in tie-breaking order."""
    gens = []
    for t in elements_up_to_norm(ring, gen_cap):
        n = t.norm_sq()
        gens.append((0, t.a, t.b, n))
        gens.append((1, t.a, t.b, n))
    return gens


def _form_code(ring: RingDesc) -> int:
    return 1 if ring.form is Form.HALF else 0


def _run(start: UniPair, params: SearchParams, targets=(), *, backend=None):
    ring = start.ring
    gens = _generators(ring, params.gen_norm_cap)
    states, parent, move, exhausted, hit = _bfs.bfs(
        _form_code(ring),
        ring.D,
        start.key,
        gens,
        params.state_norm_cap,
        params.max_states,
        params.max_depth,
        [t.key for t in targets],
        backend=backend,
    )
    return _Tree(ring, gens, states, parent, move), exhausted, hit


@dataclass(frozen=True)
class _Tree:
    ring: RingDesc
    gens: list
    states: list
    parent: list
    move: list

    def word_to(self, idx: int) -> ElemWord:
        moves = []
        while self.parent[idx] >= 0:
            side, a, b, _ = self.gens[self.move[idx]]
            moves.append(ElemMove(Side.UPPER if side == 0 else Side.LOWER, QuadInt(self.ring, a, b)))
            idx = self.parent[idx]
        return ElemWord(reversed(moves))


@dataclass(frozen=True)
class OrbitReport:
    start: UniPair
    order: tuple[UniPair, ...]
    frontier_exhausted: bool
    _tree: _Tree = field(repr=False, compare=False)

    @cached_property
    def visited(self) -> frozenset[UniPair]:
        return frozenset(self.order)

    @cached_property
    def _index(self) -> dict[UniPair, int]:
        return {p: i for i, p in enumerate(self.order)}

    def witness(self, q: UniPair) -> ElemWord:
        return self._tree.word_to(self._index[q])

    @cached_property
    def witnesses(self) -> dict[UniPair, ElemWord]:
        return {q: self.witness(q) for q in self.order}

    def to_json(self) -> dict:
        return {
            "visited": [str(p) for p in self.order],
            "witnesses": {str(p): str(w) for p, w in self.witnesses.items()},
            "exhausted": self.frontier_exhausted,
        }


def _require_unimodular(*pairs: UniPair) -> None:
    for p in pairs:
        if not is_unimodular(p):
            raise InvalidInput(f"{p} is not unimodular")


def orbit_bfs(start: UniPair, params: SearchParams = DEFAULT_PARAMS, *, backend=None) -> OrbitReport:
    """Breadth-first closure of ``start`` inside the norm window of ``params``.

    Witness words are shortest in elementary moves, ties broken by
    ``(norm_sq(t), t.a, t.b, UPPER before LOWER)``.
    """
    _require_unimodular(start)
    tree, exhausted, _ = _run(start, params, backend=backend)
    order = tuple(UniPair.from_key(start.ring, k) for k in tree.states)
    return OrbitReport(start, order, exhausted, tree)


class Outcome(enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    WORD = "WORD"
    NOT_FOUND = "NOT_FOUND"
    REDUCED = "REDUCED"
    STALLED = "STALLED"


@dataclass(frozen=True)
class SearchResult:
    outcome: Outcome
    word: ElemWord | None = None

    @property
    def found(self) -> bool:
        return self.word is not None

    @property
    def inconclusive(self) -> bool:
        return self.outcome is Outcome.NOT_FOUND


def pairs_equivalent(p: UniPair, q: UniPair, params: SearchParams = DEFAULT_PARAMS) -> SearchResult:
    """Meet-in-the-middle search for ``w`` with ``p . w = q``.

    The depth budget is split between a search from ``p`` and one from ``q``;
    a shared state ``m`` with ``p . u = m = q . v`` gives ``w = u v^-1``.
    """
    if p.ring != q.ring:
        raise RingMismatch(f"{p.ring} vs {q.ring}")
    _require_unimodular(p, q)
    if p == q:
        return SearchResult(Outcome.EQUIVALENT, ElemWord())
    fwd = SearchParams(
        params.state_norm_cap, params.gen_norm_cap, params.max_states, ceil(params.max_depth / 2)
    )
    tree_p, _, hit = _run(p, fwd, [q])
    if hit >= 0:
        word = tree_p.word_to(hit)
    else:
        if params.max_depth < 2:
            return SearchResult(Outcome.NOT_FOUND)
        back = SearchParams(
            params.state_norm_cap, params.gen_norm_cap, params.max_states, params.max_depth // 2
        )
        meet = [UniPair.from_key(p.ring, k) for k in tree_p.states]
        tree_q, _, hit = _run(q, back, meet)
        if hit < 0:
            return SearchResult(Outcome.NOT_FOUND)
        m = tree_q.states[hit]
        word = tree_p.word_to(tree_p.states.index(m)) + tree_q.word_to(hit).inverse()
    if act_word(p, word) != q:
        raise AssertionError(f"witness word {word} does not map {p} to {q}")
    return SearchResult(Outcome.EQUIVALENT, word)


# --- greedy reduction ---------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    outcome: Outcome
    final: UniPair
    word: ElemWord


def _closest_multipliers(num: QuadInt, den: QuadInt) -> list[QuadInt]:
    """Lattice corners around ``num / den``; one of them is a closest point.

    Both orders have a Delaunay-triangulated fundamental parallelogram (the
    rectangle for SQRT, two non-obtuse triangles for HALF), so the nearest
    lattice point to ``z`` is a corner of the cell containing ``z``.
    """
    q = num * den.conj()
    n = den.norm_sq()
    ring = num.ring
    xs = {q.a // n, -(-q.a // n)}
    ys = {q.b // n, -(-q.b // n)}
    return [ring(a, b) for a in xs for b in ys]


def _best_move(alpha: QuadInt, beta: QuadInt, side: Side):
    """Best nonzero ``t`` on ``side``: minimizes the norm of the entry that changes."""
    fixed, moving = (alpha, beta) if side is Side.UPPER else (beta, alpha)
    if not fixed:
        return None
    best = None
    for t in _closest_multipliers(-moving, fixed):
        if not t:
            continue
        new = (moving + t * fixed).norm_sq()
        key = (new, t.norm_sq(), t.a, t.b)
        if best is None or key < best[0]:
            best = (key, t)
    return best


def unit_diagonal_word(u: QuadInt) -> ElemWord:
    """Word for ``diag(u, u^-1)``: ``w(u) w(-1)`` with ``w(x) = U(x) L(-x^-1) U(x)``."""
    ring = u.ring
    inv = u.unit_inverse()

    def w(x, xinv):
        return [ElemMove(Side.UPPER, x), ElemMove(Side.LOWER, -xinv), ElemMove(Side.UPPER, x)]

    return ElemWord(w(u, inv) + w(-ring.one, -ring.one))


def reduce_pair(start: UniPair) -> ReductionResult:
    """Greedy descent of ``(max, min)`` of the entry norms by single moves.

    Each step takes the move with the smallest resulting ``(max, min)``
    (ties: smaller ``norm_sq(t)``, then ``(t.a, t.b)``, then UPPER). Stops
    when no move strictly decreases it; the ``min`` component only matters
    for pairs of units such as ``(-1, -1)``. A stop at ``(u, 0)`` or ``(0, u)``
    with a unit ``u != +-1`` is finished by a diagonal word so the final pair
    is a variant of ``(1, 0)``.
    """
    if not start.alpha and not start.beta:
        raise InvalidInput("cannot reduce the zero pair")
    ring = start.ring
    alpha, beta = start.alpha, start.beta
    moves: list[ElemMove] = []
    while True:
        na, nb = alpha.norm_sq(), beta.norm_sq()
        cur = (max(na, nb), min(na, nb))
        choice = None
        for order, side in enumerate((Side.UPPER, Side.LOWER)):
            best = _best_move(alpha, beta, side)
            if best is None:
                continue
            (new, tn, ta, tb), t = best
            other = na if side is Side.UPPER else nb
            key = (max(new, other), min(new, other), tn, ta, tb, order)
            if key[:2] < cur and (choice is None or key < choice[0]):
                choice = (key, ElemMove(side, t))
        if choice is None:
            break
        mv = choice[1]
        moves.append(mv)
        if mv.side is Side.UPPER:
            beta = beta + alpha * mv.t
        else:
            alpha = alpha + beta * mv.t
    final = UniPair(alpha, beta)
    word = ElemWord(moves)
    one = ring.one
    if not beta and alpha.is_unit() and alpha not in (one, -one):
        word = word + unit_diagonal_word(alpha.unit_inverse())
    elif not alpha and beta.is_unit() and beta not in (one, -one):
        word = word + unit_diagonal_word(beta)
    final = act_word(start, word)
    reduced = final in trivial_variants(UniPair(one, ring.zero))
    return ReductionResult(Outcome.REDUCED if reduced else Outcome.STALLED, final, word)


# --- E_2 membership ------------------------------------------------------------


def _finish_to_identity_row(p: UniPair) -> ElemWord:
    """Shortest of ``1, S, S^-1, S^2`` taking a variant of ``(1, 0)`` to ``(1, 0)``."""
    ring = p.ring
    s = s_word(ring)
    target = UniPair(ring.one, ring.zero)
    for word in (ElemWord(), s, s.inverse(), s + s):
        if act_word(p, word) == target:
            return word
    raise InvalidInput(f"{p} is not a variant of (1, 0)")


def matrix_in_E2(M: Mat2, params: SearchParams = DEFAULT_PARAMS) -> SearchResult:
    """Look for an elementary word whose product is ``M``.

    Greedy reduction of the top row first, then a budgeted BFS toward the
    variants of ``(1, 0)``. ``NOT_FOUND`` is inconclusive.
    """
    ring = M.ring
    if mat_det(M) != ring.one:
        raise NotUnimodular(f"det {mat_det(M)} != 1")
    top = M.top_row
    red = reduce_pair(top)
    if red.outcome is Outcome.REDUCED:
        word = red.word
    else:
        targets = trivial_variants(UniPair(ring.one, ring.zero))
        tree, _, hit = _run(top, params, targets)
        if hit < 0:
            return SearchResult(Outcome.NOT_FOUND)
        word = tree.word_to(hit)
    word = word + _finish_to_identity_row(act_word(top, word))
    # M . W = [[1, 0], [c, 1]], so M = L(c) W^-1
    c = (M @ word_to_matrix(word, ring)).m21
    head = ElemWord([ElemMove(Side.LOWER, c)]) if c else ElemWord()
    result = head + word.inverse()
    if word_to_matrix(result, ring) != M:
        raise AssertionError(f"word {result} does not multiply out to {M}")
    return SearchResult(Outcome.WORD, result)
