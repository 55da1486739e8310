"""NumPy reference kernels.

Batch kernels shared by the Monte Carlo and interaction drivers.  Rows
are independent samples; values may be permutation entries (integers)
or raw coordinates (floats); only comparisons matter.  A compiled
twin of this module may be selected at import; both lanes receive the
same pre-sorted inputs and must produce identical outputs.
"""

from __future__ import annotations

import numpy as np


def batch_descents(rows: np.ndarray) -> np.ndarray:
    """Descent count of each row: positions with row[q+1] < row[q]."""
    a = np.asarray(rows)
    if a.ndim != 2:
        raise ValueError("rows must be 2-D")
    if a.shape[1] < 2:
        return np.zeros(a.shape[0], dtype=np.int64)
    return (a[:, 1:] < a[:, :-1]).sum(axis=1, dtype=np.int64)


def pattern_ids(windows: np.ndarray) -> np.ndarray:
    """Factorial-base index of each window's pattern.

    windows has shape (..., k); the id of a window (w_0, ..., w_{k-1})
    is sum_j c_j * (k-1-j)! with c_j = #{l > j : w_l < w_j}, which is a
    bijection onto 0..k!-1 ordered lexicographically by pattern.
    """
    k = windows.shape[-1]
    radix = np.ones(k, dtype=np.int64)
    for j in range(k - 2, -1, -1):
        radix[j] = radix[j + 1] * (k - 1 - j)
    # greater[..., j, l] == (w_j > w_l); count l > j per j
    greater = windows[..., :, None] > windows[..., None, :]
    upper = np.triu(np.ones((k, k), dtype=bool), 1)
    counts = (greater & upper).sum(axis=-1, dtype=np.int64)
    return counts @ radix


def batch_pattern_stat(
    rows: np.ndarray,
    k: int,
    table: np.ndarray,
    per_window: np.ndarray | None = None,
) -> np.ndarray:
    """Sum of component values over all k-windows of each row.

    ``table`` maps pattern ids to values (size k!) and is used for every
    window unless ``per_window`` (shape (n-k+1, k!)) is given.
    """
    a = np.asarray(rows)
    if a.ndim != 2:
        raise ValueError("rows must be 2-D")
    n = a.shape[1]
    if k > n:
        raise ValueError(f"degree {k} exceeds row length {n}")
    win = np.lib.stride_tricks.sliding_window_view(a, k, axis=1)
    ids = pattern_ids(win)
    if per_window is not None:
        if per_window.shape[0] != n - k + 1:
            raise ValueError(
                f"need {n - k + 1} window tables, got {per_window.shape[0]}"
            )
        vals = np.take_along_axis(per_window[None, :, :], ids[:, :, None], 2)
        return vals[:, :, 0].sum(axis=1)
    return np.asarray(table, dtype=np.float64)[ids].sum(axis=1)


def descent_pair_deltas(
    sv: np.ndarray,
    su: np.ndarray,
    xpos: np.ndarray,
    ypos: np.ndarray,
    v_new: np.ndarray,
    u_new: np.ndarray,
    px: np.ndarray,
    py: np.ndarray,
) -> np.ndarray:
    """Replacement deltas of the descent-pair statistic, all points at once.

    For each trial row b and point j, returns f(x) - f(x^j) where f is
    the two-sided descent sum and x^j replaces point j's coordinates
    with the proposed ones.  Inputs per trial row (all 0-based):

      sv    v-coordinates listed in x-order
      su    u-coordinates listed in y-order
      xpos  x-position of point j          ypos  y-position of point j
      v_new, u_new   proposed coordinates of point j
      px    #{m != j : u_m < u_new_j}  (insertion slot on the x side)
      py    #{m != j : v_m < v_new_j}

    Each side contributes a removal at the old position and an
    insertion at the new slot; both touch at most two adjacent
    comparisons, so the delta needs O(1) work per point.
    """
    out = _side_change(sv, xpos, v_new, px)
    out += _side_change(su, ypos, u_new, py)
    return -out


def _side_change(seq, pos, val_new, slot):
    b, n = seq.shape
    if n < 2:
        return np.zeros((b, n), dtype=np.int64)
    rowi = np.arange(b)[:, None]

    def at(idx):
        return seq[rowi, np.clip(idx, 0, n - 1)]

    # removal of the element at position t
    t = pos
    left_ok = t >= 1
    right_ok = t <= n - 2
    a = at(t - 1)
    bb = at(t)
    c = at(t + 1)
    change = (
        ((a > c) & left_ok & right_ok).astype(np.int64)
        - ((a > bb) & left_ok).astype(np.int64)
        - ((bb > c) & right_ok).astype(np.int64)
    )

    # insertion of val_new at slot p of the reduced sequence; reduced
    # index q maps back to q + (q >= t) in the original
    p = slot
    has_left = p >= 1
    has_right = p <= n - 2
    ql = p - 1
    la = at(ql + (ql >= t))
    qr = p
    rc = at(qr + (qr >= t))
    change += (
        ((la > val_new) & has_left).astype(np.int64)
        + ((val_new > rc) & has_right).astype(np.int64)
        - ((la > rc) & has_left & has_right).astype(np.int64)
    )
    return change
