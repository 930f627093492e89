"""Virtual grid fitting and the cell -> points hash table (training phase).

Cell widths are fitted per dimension by splitting the data range into the
largest number of equal bins that leaves no bin empty; points are then
hashed to integer cell ids by floor division of raw coordinates by the
fitted widths.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import LabeledPoint, _check_metric

CellId = tuple[int, ...]


@dataclass(frozen=True)
class GridParams:
    """Fitted grid geometry: per-dimension cell widths and split counts.

    origin records the per-dimension training minimum; it is reporting
    metadata only (hashing anchors at absolute zero).
    """

    widths: np.ndarray
    origin: np.ndarray
    splits: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "widths", np.asarray(self.widths, dtype=float))
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=float))
        object.__setattr__(self, "splits", np.asarray(self.splits, dtype=np.int64))
        if np.any(self.widths <= 0):
            raise ValueError("all cell widths must be positive")

    @property
    def dim(self) -> int:
        return self.widths.shape[0]


def _bin_of(values: np.ndarray, lo: float, span: float, s: int) -> np.ndarray:
    # Right edge is closed: the maximum value belongs to the last bin.
    return np.minimum(np.floor((values - lo) * s / span), s - 1)


def _max_splits_1d(values: np.ndarray, cap: int | None) -> tuple[int, float]:
    """Largest split count s leaving no bin of [lo, hi] empty, and the width.

    A bin can only go empty inside a gap between consecutive distinct
    values, and only when gap * s > span, so each candidate s is checked
    against the few largest gaps instead of rehashing every value.
    """
    distinct = np.unique(values)
    if distinct.size == 1:
        return 1, 1.0  # constant feature: any positive width works
    lo = float(distinct[0])
    span = float(distinct[-1] - distinct[0])
    gaps = np.diff(distinct)
    max_gap = float(gaps.max())
    # Occupancy is guaranteed to fail once max_gap * s / span >= 2.
    s_hi = min(distinct.size, int(np.ceil(2.0 * span / max_gap)))
    if cap is not None:
        s_hi = min(s_hi, cap)
    gaps_asc = np.sort(gaps)
    by_size = np.argsort(gaps, kind="stable")[::-1]
    left = distinct[:-1][by_size]
    right = distinct[1:][by_size]
    for s in range(s_hi, 1, -1):
        cnt = gaps.size - int(np.searchsorted(gaps_asc, span / s, side="right"))
        if cnt == 0:
            return s, span / s
        lb = _bin_of(left[:cnt], lo, span, s)
        rb = _bin_of(right[:cnt], lo, span, s)
        if (rb - lb).max() <= 1:
            return s, span / s
    return 1, span


def _coords_matrix(data: Sequence[LabeledPoint]) -> np.ndarray:
    if len(data) == 0:
        raise ValueError("empty dataset")
    dims = {p.dim for p in data}
    if len(dims) != 1:
        raise ValueError(f"points have mixed dimensions: {sorted(dims)}")
    return np.stack([p.coords for p in data])


def fit_cell_measurements(
    data: Sequence[LabeledPoint], max_splits: int | None = None
) -> GridParams:
    """Fit per-dimension cell widths from the training data.

    Each dimension independently gets the largest split count that keeps
    every bin of its value range occupied; the cell width is range/splits.
    Constant dimensions fall back to a single split of width 1.
    """
    coords = _coords_matrix(data)
    d = coords.shape[1]
    widths = np.empty(d)
    splits = np.empty(d, dtype=np.int64)
    for j in range(d):
        splits[j], widths[j] = _max_splits_1d(coords[:, j], max_splits)
    return GridParams(widths=widths, origin=coords.min(axis=0), splits=splits)


def hash_cell(p, params: GridParams) -> CellId:
    """Cell id of a point: per-dimension floor division by the cell width.

    Floor is toward negative infinity, so points left of the origin land
    in distinct negative cells. Any finite point hashes.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (params.dim,):
        raise ValueError(f"dimension mismatch: point {p.shape}, grid {params.dim}")
    return tuple(int(v) for v in np.floor(p / params.widths))


def _hash_all(coords: np.ndarray, widths: np.ndarray) -> np.ndarray:
    return np.floor(coords / widths).astype(np.int64)


class GridIndex:
    """Immutable cell -> point-indices hash table over a training set.

    Cells are stored both as a dict (point lookup by cell id) and as a
    lexicographically sorted id matrix with aligned buckets, which the
    exploration phase scans when grouping cells into layers.
    """

    def __init__(
        self,
        params: GridParams,
        coords: np.ndarray,
        labels: Sequence[object],
        metric: str,
        cell_array: np.ndarray,
        buckets: list[np.ndarray],
    ):
        self.params = params
        self.coords = coords
        self.labels = labels
        self.metric = metric
        self.cell_array = cell_array
        self.buckets = buckets
        self.table: dict[CellId, np.ndarray] = {
            tuple(int(v) for v in row): bucket
            for row, bucket in zip(cell_array, buckets)
        }

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


def build(
    data: Sequence[LabeledPoint],
    metric: str = "euclidean",
    params: GridParams | None = None,
    max_splits: int | None = None,
) -> GridIndex:
    """Build the grid index: fit widths, hash every point into its cell.

    Bucket lists preserve the input order of points. Pass explicit params
    to skip fitting (useful for constructed scenarios).
    """
    _check_metric(metric)
    data = list(data)
    coords = _coords_matrix(data)
    labels = [p.label for p in data]
    if params is None:
        params = fit_cell_measurements(data, max_splits)
    elif params.dim != coords.shape[1]:
        raise ValueError("params dimension does not match the data")
    n, d = coords.shape
    ids = _hash_all(coords, params.widths)
    # Sort rows lexicographically by cell id, then by original index so
    # buckets keep input order.
    keys = (np.arange(n),) + tuple(ids[:, j] for j in range(d - 1, -1, -1))
    order = np.lexsort(keys)
    sorted_ids = ids[order]
    new_cell = np.any(sorted_ids[1:] != sorted_ids[:-1], axis=1)
    starts = np.concatenate(([0], np.nonzero(new_cell)[0] + 1))
    cell_array = sorted_ids[starts]
    buckets = np.split(order, starts[1:])
    return GridIndex(params, coords, labels, metric, cell_array, buckets)


def cell_points(index: GridIndex, cell) -> list[int]:
    """Point indices stored in a cell; empty list for absent cells."""
    bucket = index.table.get(tuple(int(v) for v in cell))
    return [] if bucket is None else [int(i) for i in bucket]


# ---------------------------------------------------------------------------
# Serialization: versioned binary dump that round-trips byte-identically.

_MAGIC = b"GHNIDX\x01\n"
_ARRAY_FIELDS = ("widths", "origin", "splits", "coords", "labels", "cell_ids", "offsets", "order")


def save_index(index: GridIndex, path) -> None:
    """Write the index to a deterministic binary file.

    Layout: magic, length-prefixed JSON header (metric plus array dtypes
    and shapes), then the raw bytes of each array in a fixed order.
    save -> load -> save reproduces the file byte for byte.
    """
    labels = np.asarray(index.labels)
    if labels.dtype == object:
        raise ValueError("labels must be numeric or strings to serialize")
    offsets = np.cumsum([0] + [b.size for b in index.buckets]).astype(np.int64)
    arrays = {
        "widths": index.params.widths,
        "origin": index.params.origin,
        "splits": index.params.splits,
        "coords": np.ascontiguousarray(index.coords),
        "labels": np.ascontiguousarray(labels),
        "cell_ids": np.ascontiguousarray(index.cell_array),
        "offsets": offsets,
        "order": np.concatenate(index.buckets) if index.buckets else np.empty(0, np.int64),
    }
    header = {
        "version": 1,
        "metric": index.metric,
        "arrays": {
            name: {"dtype": arrays[name].dtype.str, "shape": list(arrays[name].shape)}
            for name in _ARRAY_FIELDS
        },
    }
    blob = json.dumps(header, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        for name in _ARRAY_FIELDS:
            fh.write(np.ascontiguousarray(arrays[name]).tobytes())


def load_index(path) -> GridIndex:
    """Read an index written by save_index."""
    with open(path, "rb") as fh:
        if fh.read(len(_MAGIC)) != _MAGIC:
            raise ValueError(f"{path}: not a grid index file")
        (blob_len,) = struct.unpack("<I", fh.read(4))
        header = json.loads(fh.read(blob_len))
        if header.get("version") != 1:
            raise ValueError(f"{path}: unsupported index version")
        arrays = {}
        for name in _ARRAY_FIELDS:
            meta = header["arrays"][name]
            dtype = np.dtype(meta["dtype"])
            shape = tuple(meta["shape"])
            count = int(np.prod(shape)) if shape else 1
            raw = fh.read(dtype.itemsize * count)
            arrays[name] = np.frombuffer(raw, dtype=dtype).reshape(shape).copy()
    params = GridParams(arrays["widths"], arrays["origin"], arrays["splits"])
    offsets = arrays["offsets"]
    order = arrays["order"].astype(np.int64)
    buckets = [order[offsets[i]:offsets[i + 1]] for i in range(len(offsets) - 1)]
    return GridIndex(
        params,
        arrays["coords"],
        arrays["labels"],
        header["metric"],
        arrays["cell_ids"],
        buckets,
    )
