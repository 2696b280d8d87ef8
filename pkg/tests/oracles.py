"""Independent brute-force oracles. None of these call the code paths they check."""

from math import isqrt

from e2orbits.linalg2 import Mat2, UniPair
from e2orbits.ring import Form, QuadInt, RingDesc


def pell_brute(D, y_max=100_000):
    if isqrt(D) ** 2 == D:
        return None
    for y in range(1, y_max + 1):
        x2 = 1 + D * y * y
        x = isqrt(x2)
        if x * x == x2:
            return (x, y)
    raise RuntimeError(f"no solution with y <= {y_max}")


def disc_brute(ring: RingDesc, cap: int):
    """Elements with norm <= cap by scanning a generous box."""
    r = 2 * isqrt(cap) + 2
    out = []
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            x = QuadInt(ring, a, b)
            if x.norm_sq() <= cap:
                out.append(x)
    return out


def exact_div(x: QuadInt, y: QuadInt):
    """``x / y`` if it lies in the order, else None (via the embedding in C)."""
    # x / y = x * conj(y) / N(y); coordinates in the basis 1, w
    ring = x.ring
    D = ring.D
    ya, yb = y.a, y.b
    if ring.form is Form.SQRT:
        ca, cb = ya, -yb
        n = ya * ya + D * yb * yb
        pa, pb = x.a * ca - D * x.b * cb, x.a * cb + x.b * ca
    else:
        ca, cb = ya + yb, -yb
        n = ya * ya + ya * yb + D * yb * yb
        pa, pb = x.a * ca - D * x.b * cb, x.a * cb + x.b * ca + x.b * cb
    if pa % n or pb % n:
        return None
    return QuadInt(ring, pa // n, pb // n)


def completion_brute(p: UniPair, disc):
    """Some (gamma, delta) from ``disc`` with alpha*delta - beta*gamma = 1, or None."""
    alpha, beta = p.alpha, p.beta
    one = alpha.ring.one
    in_disc = set(disc)
    if alpha:
        for gamma in disc:
            delta = exact_div(one + beta * gamma, alpha)
            if delta is not None and delta in in_disc:
                return gamma, delta
    elif beta:
        for delta in disc:
            gamma = exact_div(alpha * delta - one, beta)
            if gamma is not None and gamma in in_disc:
                return gamma, delta
    return None


def binomial_power_sqrt(D: int, k: int):
    """Coordinates of (1 + sqrt(-D))**k from the binomial theorem."""
    from math import comb

    a = sum(comb(k, j) * (-D) ** (j // 2) for j in range(0, k + 1, 2))
    b = sum(comb(k, j) * (-D) ** (j // 2) for j in range(1, k + 1, 2))
    return a, b


def is_l2_brute(M: Mat2):
    return M.m11.coords == (1, 0) and M.m22.coords == (1, 0) and M.m12.coords == (0, 0)
