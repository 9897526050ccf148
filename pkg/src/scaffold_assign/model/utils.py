from __future__ import annotations

import numpy as np


# coordinate bounds, 48-bit signed so any cost sum over 2^22 points fits an int64

COORD_BITS = 48
COORD_MIN = -(1 << (COORD_BITS - 1))
COORD_MAX = (1 << (COORD_BITS - 1)) - 1
MAX_POINTS = 1 << 22


# helpers


def exists(v):
    return v is not None


def default(v, d):
    return v if exists(v) else d


# array helpers


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def index_array(values) -> np.ndarray:
    return np.asarray(values, dtype=np.int64).reshape(-1)


def is_sorted(arr: np.ndarray) -> bool:
    return bool(arr.size < 2 or np.all(arr[1:] >= arr[:-1]))


def count_inversions(seq: np.ndarray) -> int:
    """
    Number of pairs i < j with seq[i] > seq[j], via a Fenwick tree over value ranks.
    """
    if seq.size < 2:
        return 0
    ranks = (np.searchsorted(np.unique(seq), seq) + 1).tolist()
    size = len(ranks)
    tree = [0] * (size + 1)
    inversions = 0
    for seen, r in enumerate(ranks):
        # prefix count of values <= r seen so far
        not_greater = 0
        i = r
        while i > 0:
            not_greater += tree[i]
            i -= i & -i
        inversions += seen - not_greater
        i = r
        while i <= size:
            tree[i] += 1
            i += i & -i
    return inversions
