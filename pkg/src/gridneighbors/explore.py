"""Layered exploration: k-nearest-neighbor queries over a grid index.

Starting from the query's central cell, cells are visited layer by layer
(layer l = all cells at Chebyshev distance l in cell-id space). Candidates
feed a bounded top-k selection; exploration stops either when a full layer
produces no update (heuristic, may rarely miss) or when a geometric lower
bound proves no unvisited cell can improve the result (guaranteed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Neighbor, keys_to_distances, ordering_keys
from .grid import CellId, GridIndex

STOP_MODES = ("heuristic", "guaranteed")


@dataclass(frozen=True)
class QueryStats:
    """Work counters for one query.

    layers_visited is the index of the last visited layer (0 = central
    cell only); cells_visited counts distinct non-empty cells examined.
    """

    layers_visited: int
    cells_visited: int
    points_scanned: int


def layer_cell_count(l: int, d: int) -> int:
    """Number of cells on layer l in d dimensions: (2l+1)^d - (2l-1)^d."""
    if l < 1 or d < 1:
        raise ValueError("require l >= 1 and d >= 1")
    return (2 * l + 1) ** d - (2 * l - 1) ** d


def total_cell_count(l: int, d: int) -> int:
    """Cells on layers 1..l combined (center excluded): (2l+1)^d - 1."""
    if l < 0 or d < 1:
        raise ValueError("require l >= 0 and d >= 1")
    return (2 * l + 1) ** d - 1


def layer_cells(center, l: int) -> set[CellId]:
    """All cell ids at Chebyshev distance exactly l from center."""
    if l < 0:
        raise ValueError("require l >= 0")
    center = tuple(int(c) for c in center)
    if l == 0:
        return {center}
    d = len(center)
    cells = set()
    for offs in itertools.product(range(-l, l + 1), repeat=d):
        if max(abs(o) for o in offs) == l:
            cells.add(tuple(c + o for c, o in zip(center, offs)))
    return cells


def knn_query(
    index: GridIndex, q, k: int, mode: str = "heuristic"
) -> tuple[list[Neighbor], QueryStats]:
    """Select the k nearest training points to q by layered exploration.

    Modes:
      heuristic  -- stop once the buffer is full and a whole layer caused
                    no update;
      guaranteed -- stop only when l * min(width) exceeds the kth distance,
                    which lower-bounds the distance to anything beyond
                    layer l; results then match brute force exactly.

    Both modes terminate once the visited layers cover every non-empty
    cell. Returns neighbors sorted by (distance, point_index), plus stats.
    """
    if mode not in STOP_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {STOP_MODES}")
    q = np.asarray(q, dtype=float)
    if q.shape != (index.dim,):
        raise ValueError(f"dimension mismatch: query {q.shape}, index {index.dim}")
    n = index.size
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range [1, {n}]")
    metric = index.metric
    widths = index.params.widths
    center = np.floor(q / widths).astype(np.int64)
    # Chebyshev layer of every non-empty cell; cells beyond the max can
    # be skipped entirely, which also bounds the exploration for outlier
    # queries.
    cheb = np.abs(index.cell_array - center).max(axis=1)
    max_layer = int(cheb.max())
    min_width = float(widths.min())

    best_keys = np.empty(0)
    best_idx = np.empty(0, dtype=np.int64)
    cells_visited = 0
    points_scanned = 0
    l = 0
    while True:
        sel = np.nonzero(cheb == l)[0]  # lexicographic: cell_array is sorted
        changed = False
        if sel.size:
            cand = np.concatenate([index.buckets[j] for j in sel])
            keys = ordering_keys(q, index.coords[cand], metric)
            cells_visited += int(sel.size)
            points_scanned += int(cand.size)
            all_keys = np.concatenate([best_keys, keys])
            all_idx = np.concatenate([best_idx, cand])
            order = np.lexsort((all_idx, all_keys))[:k]
            new_keys = all_keys[order]
            new_idx = all_idx[order]
            changed = new_idx.size != best_idx.size or not np.array_equal(new_idx, best_idx)
            best_keys, best_idx = new_keys, new_idx
        layers_visited = l
        if best_idx.size == k:
            if mode == "heuristic" and not changed:
                break
            if mode == "guaranteed":
                bound = l * min_width
                bound_key = bound * bound if metric == "euclidean" else bound
                if bound_key > best_keys[-1]:
                    break
        if l >= max_layer:
            break
        l += 1

    dists = keys_to_distances(best_keys, metric)
    neighbors = [
        Neighbor(float(d), int(i), index.labels[int(i)])
        for d, i in zip(dists, best_idx)
    ]
    return neighbors, QueryStats(layers_visited, cells_visited, points_scanned)
