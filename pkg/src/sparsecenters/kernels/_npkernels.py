"""Pure numpy implementation of the row-wise weighted median kernel."""

from __future__ import annotations

import numpy as np

# Equality of the cumulative weight with half the total weight is decided
# with this relative tolerance, so fractional per-sample weights (1/n) do
# not flip the midpoint branch through round-off.
HALF_WEIGHT_RTOL = 1e-12

# Rows are processed in blocks so the argsort/cumsum temporaries stay
# bounded even for feature counts in the hundreds of thousands.
_BLOCK_ELEMENTS = 1 << 22


def rowwise_weighted_median(values, weights):
    """Weighted median and dispersion of every row of ``values``.

    ``weights`` applies to columns; entries must be nonnegative, finite and
    sum to a positive total.  Zero-weight columns carry no mass: they can
    neither become the median nor serve as the next-larger support point on
    a flat half-mass interval.  Returns ``(median, dispersion)`` with
    ``dispersion[i] = sum_j weights[j] * |values[i, j] - median[i]|``.
    """
    block = np.ascontiguousarray(values, dtype=np.float64)
    w = np.ascontiguousarray(weights, dtype=np.float64)
    m, n = block.shape
    total = float(np.sum(w))
    half = 0.5 * total
    tol = HALF_WEIGHT_RTOL * total

    median = np.empty(m, dtype=np.float64)
    dispersion = np.empty(m, dtype=np.float64)
    rows_per_block = max(1, _BLOCK_ELEMENTS // max(n, 1))
    for start in range(0, m, rows_per_block):
        stop = min(m, start + rows_per_block)
        _block_median(
            block[start:stop], w, half, tol,
            median[start:stop], dispersion[start:stop],
        )
    return median, dispersion


def _block_median(V, w, half, tol, out_median, out_dispersion):
    rows = np.arange(V.shape[0])
    order = np.argsort(V, axis=1, kind="stable")
    sorted_values = np.take_along_axis(V, order, axis=1)
    sorted_weights = w[order]
    cumulative = np.cumsum(sorted_weights, axis=1)

    # First position where the cumulative weight reaches half the total.
    first = np.argmax(cumulative >= half - tol, axis=1)
    at_half = sorted_values[rows, first]

    # Cumulative weight through the whole run of values equal to at_half
    # (duplicates are adjacent after sorting, so their mass accumulates).
    in_run = sorted_values == at_half[:, None]
    run_end = V.shape[1] - 1 - np.argmax(in_run[:, ::-1], axis=1)
    run_weight = cumulative[rows, run_end]

    median = at_half.copy()
    on_boundary = run_weight <= half + tol
    if np.any(on_boundary):
        # Exactly half the mass lies at or below at_half: the median is the
        # midpoint to the next strictly larger positive-weight value.
        above = (sorted_values > at_half[:, None]) & (sorted_weights > 0.0)
        nxt = np.argmax(above, axis=1)
        b = rows[on_boundary]
        median[b] = 0.5 * (at_half[b] + sorted_values[b, nxt[b]])

    out_median[:] = median
    # per-row pairwise reduction: independent of how rows are blocked
    out_dispersion[:] = (np.abs(V - median[:, None]) * w).sum(axis=1)
