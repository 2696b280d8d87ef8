"""Select the BFS kernel: the compiled core when built, pure Python otherwise.

Set ``E2ORBITS_PURE=1`` to force the Python kernel.
"""

import os

from . import _bfs_py

try:
    if os.environ.get("E2ORBITS_PURE"):
        raise ImportError("forced pure-Python kernel")
    from . import _bfs_core
except ImportError:
    _bfs_core = None

BACKEND = "compiled" if _bfs_core is not None else "python"


def bfs(form, D, start, gens, state_cap, max_states, max_depth, targets=(), *, backend=None):
    """Dispatch to a kernel; the compiled one only when all coordinates fit its packing."""
    use = backend or BACKEND
    if use == "compiled":
        if _bfs_core is None:
            raise RuntimeError("compiled BFS kernel is not built")
        gen_cap = gens[-1][3] if gens else 0
        if _bfs_core.fits(form, D, start, state_cap, gen_cap):
            return _bfs_core.bfs(form, D, start, gens, state_cap, max_states, max_depth, targets)
    return _bfs_py.bfs(form, D, start, gens, state_cap, max_states, max_depth, targets)
