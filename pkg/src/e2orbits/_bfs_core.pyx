# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled breadth-first search over pair states.

Mirrors ``_bfs_py.bfs`` exactly. Coordinates are packed into 16-bit fields of
a 64-bit key, so callers must check ``fits`` first; out-of-range inputs go to
the pure-Python path.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

ctypedef long long i64
ctypedef unsigned long long u64

cdef i64 COORD_BOUND = 1 << 15
# norm caps keep every in-window coordinate below COORD_BOUND and every
# intermediate product below 2**62
cdef i64 CAP_LIMIT = 1 << 26
cdef i64 D_LIMIT = 1 << 26


def fits(int form, i64 D, start, i64 state_cap, i64 gen_cap):
    if D >= D_LIMIT or state_cap >= CAP_LIMIT or gen_cap >= CAP_LIMIT:
        return False
    for c in start:
        if not (-COORD_BOUND < c < COORD_BOUND):
            return False
    return True


cdef inline u64 pack(i64 a1, i64 b1, i64 a2, i64 b2) nogil:
    return (<u64>(a1 + COORD_BOUND) << 48) | (<u64>(b1 + COORD_BOUND) << 32) \
        | (<u64>(a2 + COORD_BOUND) << 16) | <u64>(b2 + COORD_BOUND)


cdef inline i64 cnorm(bint half, i64 D, i64 a, i64 b) nogil:
    if half:
        return a * a + a * b + D * b * b
    return a * a + D * b * b


cdef inline bint in_box(i64 a, i64 b) nogil:
    return -COORD_BOUND < a < COORD_BOUND and -COORD_BOUND < b < COORD_BOUND


def bfs(int form, i64 D, start, gens, i64 state_cap, i64 max_states, i64 max_depth, targets=()):
    cdef bint half = form == 1
    cdef Py_ssize_t ngen = len(gens)
    cdef vector[int] g_side
    cdef vector[i64] g_a, g_b, g_n
    for side, ta, tb, tn in gens:
        g_side.push_back(side)
        g_a.push_back(ta)
        g_b.push_back(tb)
        g_n.push_back(tn)

    cdef unordered_set[u64] tset
    for t in targets:
        if len(t) == 4 and all(-COORD_BOUND < c < COORD_BOUND for c in t):
            tset.insert(pack(t[0], t[1], t[2], t[3]))

    cdef vector[i64] st  # 4 coordinates per state
    cdef vector[i64] parent
    cdef vector[i64] move
    cdef unordered_map[u64, i64] index
    cdef i64 a1, b1, a2, b2, n1, n2, lim_u, lim_l, top, pa, pb, ca, cb, ta_, tb_
    cdef i64 si, gi, k, hit = -1, depth = 0
    cdef u64 key
    cdef bint budget_hit = False
    cdef vector[i64] frontier, nxt

    a1, b1, a2, b2 = start
    st.push_back(a1); st.push_back(b1); st.push_back(a2); st.push_back(b2)
    parent.push_back(-1)
    move.push_back(-1)
    key = pack(a1, b1, a2, b2)
    index[key] = 0
    if tset.count(key):
        hit = 0
    else:
        frontier.push_back(0)

    with nogil:
        while hit < 0 and frontier.size() > 0 and depth < max_depth and not budget_hit:
            nxt.clear()
            for k in range(<i64>frontier.size()):
                si = frontier[k]
                a1 = st[4 * si]; b1 = st[4 * si + 1]; a2 = st[4 * si + 2]; b2 = st[4 * si + 3]
                n1 = cnorm(half, D, a1, b1)
                n2 = cnorm(half, D, a2, b2)
                lim_u = (2 * n2 + 2 * state_cap) // n1 if n1 else -1
                lim_l = (2 * n1 + 2 * state_cap) // n2 if n2 else -1
                top = lim_u if lim_u > lim_l else lim_l
                for gi in range(ngen):
                    if g_n[gi] > top:
                        break
                    ta_ = g_a[gi]; tb_ = g_b[gi]
                    if g_side[gi] == 0:
                        if g_n[gi] > lim_u:
                            continue
                        pa = ta_ * a1 - D * tb_ * b1
                        pb = ta_ * b1 + tb_ * a1 + (tb_ * b1 if half else 0)
                        ca = a2 + pa; cb = b2 + pb
                        if not in_box(ca, cb) or cnorm(half, D, ca, cb) > state_cap:
                            continue
                        key = pack(a1, b1, ca, cb)
                    else:
                        if g_n[gi] > lim_l:
                            continue
                        pa = ta_ * a2 - D * tb_ * b2
                        pb = ta_ * b2 + tb_ * a2 + (tb_ * b2 if half else 0)
                        ca = a1 + pa; cb = b1 + pb
                        if not in_box(ca, cb) or cnorm(half, D, ca, cb) > state_cap:
                            continue
                        key = pack(ca, cb, a2, b2)
                    if index.count(key):
                        continue
                    if <i64>parent.size() >= max_states:
                        budget_hit = True
                        break
                    index[key] = parent.size()
                    if g_side[gi] == 0:
                        st.push_back(a1); st.push_back(b1); st.push_back(ca); st.push_back(cb)
                    else:
                        st.push_back(ca); st.push_back(cb); st.push_back(a2); st.push_back(b2)
                    parent.push_back(si)
                    move.push_back(gi)
                    if tset.count(key):
                        hit = parent.size() - 1
                        break
                    nxt.push_back(parent.size() - 1)
                if budget_hit or hit >= 0:
                    break
            frontier.swap(nxt)
            depth += 1

    cdef Py_ssize_t n = parent.size()
    states = [(st[4 * i], st[4 * i + 1], st[4 * i + 2], st[4 * i + 3]) for i in range(n)]
    exhausted = hit < 0 and not budget_hit and frontier.size() == 0
    return states, [parent[i] for i in range(n)], [move[i] for i in range(n)], exhausted, hit
