"""Unimodular pairs: completion to SL_2, special pairs and their enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .errors import InvalidParameter, NotUnimodular, OutOfScopeRing
from .linalg2 import Mat2, UniPair, mat_det
from .ring import QuadInt, RingDesc, elements_up_to_norm, gaussian_order

__all__ = [
    "UniPair",
    "Completion",
    "hermite_normal_form",
    "complete_pair",
    "is_unimodular",
    "is_special",
    "has_special_norms",
    "corrigendum_pair",
    "trivial_variants",
    "is_trivial_variant",
    "enumerate_special",
]


@dataclass(frozen=True)
class Completion:
    matrix: Mat2

    def __post_init__(self):
        det = mat_det(self.matrix)
        if det != self.matrix.ring.one:
            raise NotUnimodular(f"completion has det {det}")

    @property
    def pair(self) -> UniPair:
        return self.matrix.top_row

    @property
    def bottom_row(self) -> tuple[QuadInt, QuadInt]:
        return (self.matrix.m21, self.matrix.m22)


def hermite_normal_form(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ rows == H``. Pivots are
    positive and entries above a pivot are reduced into ``[0, pivot)``.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def sub(i, k, q):
        # row_i -= q * row_k
        Hi, Hk, Ui, Uk = H[i], H[k], U[i], U[k]
        for c in range(n):
            Hi[c] -= q * Hk[c]
        for c in range(m):
            Ui[c] -= q * Uk[c]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    sub(i, r, H[i][c] // H[r][c])
                    clean = clean and not H[i][c]
            if clean:
                break
        if not H[r][c]:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                sub(i, r, q)
        r += 1
    return H, U


def complete_pair(p: UniPair) -> Completion | None:
    """A det-1 matrix with top row ``p``, or ``None`` when ``1`` is not in ``(alpha, beta)``.

    The ideal ``(alpha, beta)`` is the Z-lattice spanned by the coordinates
    of ``alpha, w*alpha, beta, w*beta``; the pair is unimodular exactly when
    that lattice is all of ``Z^2``, which the HNF reads off directly.
    """
    alpha, beta = p.alpha, p.beta
    if not alpha and not beta:
        return None
    gens = [alpha, alpha.times_w(), beta, beta.times_w()]
    H, U = hermite_normal_form([[g.a, g.b] for g in gens])
    if H[0] != [1, 0] or H[1] != [0, 1]:
        return None
    u0, u1, u2, u3 = U[0]
    ring = p.ring
    x = QuadInt(ring, u0, u1)
    y = QuadInt(ring, u2, u3)
    return Completion(Mat2(alpha, beta, -y, x))


def is_unimodular(p: UniPair) -> bool:
    return complete_pair(p) is not None


def has_special_norms(p: UniPair) -> bool:
    """The norm conditions of a special pair, without the unimodularity test."""
    n = p.alpha.norm_sq()
    return (
        n == p.beta.norm_sq()
        and n < (p.alpha + p.beta).norm_sq()
        and n < (p.alpha - p.beta).norm_sq()
    )


def is_special(p: UniPair) -> bool:
    return has_special_norms(p) and is_unimodular(p)


def corrigendum_pair(d: int, n: int) -> tuple[UniPair, Completion]:
    """The pair ``(1+n+ni, 1+n-ni)`` of ``Z[di]`` with completion row ``(n, 1-ni)``."""
    if d < 2:
        raise OutOfScopeRing(f"family is defined for d >= 2, got d={d}")
    if n < 1 or n % d:
        raise InvalidParameter(f"need n >= 1 with d | n, got d={d}, n={n}")
    ring = gaussian_order(d)
    k = n // d  # n*i = k*w
    alpha = ring(1 + n, k)
    beta = ring(1 + n, -k)
    completion = Completion(Mat2(alpha, beta, ring(n), ring(1, -k)))
    return UniPair(alpha, beta), completion


def trivial_variants(p: UniPair) -> list[UniPair]:
    a, b = p.alpha, p.beta
    return [UniPair(a, b), UniPair(b, -a), UniPair(-a, -b), UniPair(-b, a)]


def is_trivial_variant(p: UniPair, q: UniPair) -> bool:
    return q in trivial_variants(p)


def enumerate_special(ring: RingDesc, norm_cap: int) -> list[UniPair]:
    """Every special pair with ``norm_sq(alpha) <= norm_cap``.

    Ordered by ``(norm_sq(alpha), alpha.a, alpha.b, beta.a, beta.b)``.
    """
    if norm_cap < 1:
        return []
    out = []
    for _, group in groupby(elements_up_to_norm(ring, norm_cap), key=QuadInt.norm_sq):
        same_norm = list(group)
        for alpha in same_norm:
            for beta in same_norm:
                p = UniPair(alpha, beta)
                if has_special_norms(p) and is_unimodular(p):
                    out.append(p)
    return out
