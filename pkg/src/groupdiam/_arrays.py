"""Row-wise helpers for batches of permutations stored as 2-D integer arrays."""

import numpy as np


def dtype_for(n):
    return np.uint8 if n <= 256 else np.uint16


def as_array(perms, n):
    """Stack permutations (or image tuples) into an ``(m, n)`` array."""
    rows = [p.images if hasattr(p, "images") else p for p in perms]
    if not rows:
        return np.empty((0, n), dtype=dtype_for(n))
    return np.asarray(rows, dtype=dtype_for(n))


def keys(arr):
    """Fixed-width byte keys, one per row; they sort and compare like the rows' bytes.

    Fixed-width ``S`` strings strip trailing NUL bytes, but all rows have the
    same width so distinct rows always map to distinct keys.
    """
    arr = np.ascontiguousarray(arr)
    m, n = arr.shape
    width = n * arr.dtype.itemsize
    if m == 0:
        return np.empty(0, dtype=f"S{width}")
    return arr.view(f"S{width}").reshape(m)


def lookup(sorted_keys, query):
    """Positions of ``query`` keys in ``sorted_keys`` and a found-mask."""
    pos = np.searchsorted(sorted_keys, query)
    pos = np.minimum(pos, max(len(sorted_keys) - 1, 0))
    if len(sorted_keys) == 0:
        return pos, np.zeros(len(query), dtype=bool)
    return pos, sorted_keys[pos] == query


def compose(a, b):
    """Row-wise ``a * b`` (apply ``a`` then ``b``); ``b`` may be one row or a batch."""
    if b.ndim == 1:
        return b[a]
    return np.take_along_axis(b, a.astype(np.intp), axis=1)


def inverse_rows(a):
    m, n = a.shape
    inv = np.empty_like(a)
    rows = np.repeat(np.arange(m), n)
    inv[rows, a.ravel()] = np.tile(np.arange(n, dtype=a.dtype), m)
    return inv
