"""Pure-Python breadth-first search over pair states.

States are coordinate tuples ``(a1, b1, a2, b2)`` for ``(a1 + b1 w, a2 + b2 w)``.
``gens`` is a list of ``(side, ta, tb, norm)`` with ``side`` 0 for UPPER and
1 for LOWER, already sorted by ``(norm, ta, tb, side)``.

The compiled twin in ``_bfs_core.pyx`` must return identical results.
"""


def bfs(form, D, start, gens, state_cap, max_states, max_depth, targets=()):
    """Return ``(states, parent, move, exhausted, hit)``.

    ``parent[i]``/``move[i]`` give the discovering state and generator index
    (``-1`` for the start). ``hit`` is the index of the first target reached,
    or ``-1``.
    """
    half = form == 1
    targets = set(targets)

    def mul(xa, xb, ya, yb):
        if half:
            return xa * ya - D * xb * yb, xa * yb + xb * ya + xb * yb
        return xa * ya - D * xb * yb, xa * yb + xb * ya

    def norm(a, b):
        if half:
            return a * a + a * b + D * b * b
        return a * a + D * b * b

    states = [tuple(start)]
    parent = [-1]
    move = [-1]
    index = {states[0]: 0}
    if states[0] in targets:
        return states, parent, move, False, 0

    frontier = [0]
    depth = 0
    budget_hit = False
    while frontier and depth < max_depth and not budget_hit:
        nxt = []
        for si in frontier:
            a1, b1, a2, b2 = states[si]
            n1 = norm(a1, b1)
            n2 = norm(a2, b2)
            # |t| |alpha| <= |beta| + |beta'|, and (x + y)^2 <= 2x^2 + 2y^2
            lim_u = (2 * n2 + 2 * state_cap) // n1 if n1 else -1
            lim_l = (2 * n1 + 2 * state_cap) // n2 if n2 else -1
            top = max(lim_u, lim_l)
            for gi, (side, ta, tb, tn) in enumerate(gens):
                if tn > top:
                    break
                if side == 0:
                    if tn > lim_u:
                        continue
                    pa, pb = mul(ta, tb, a1, b1)
                    ca, cb = a2 + pa, b2 + pb
                    if norm(ca, cb) > state_cap:
                        continue
                    key = (a1, b1, ca, cb)
                else:
                    if tn > lim_l:
                        continue
                    pa, pb = mul(ta, tb, a2, b2)
                    ca, cb = a1 + pa, b1 + pb
                    if norm(ca, cb) > state_cap:
                        continue
                    key = (ca, cb, a2, b2)
                if key in index:
                    continue
                if len(states) >= max_states:
                    budget_hit = True
                    break
                index[key] = len(states)
                states.append(key)
                parent.append(si)
                move.append(gi)
                if key in targets:
                    return states, parent, move, False, len(states) - 1
                nxt.append(len(states) - 1)
            if budget_hit:
                break
        frontier = nxt
        depth += 1
    exhausted = not budget_hit and not frontier
    return states, parent, move, exhausted, -1
