"""k-nearest-neighbor imputation over mixed-type records.

Distance is the heterogeneous Euclidean-overlap metric (HEOM): categorical
attributes contribute 0/1 overlap terms, numeric attributes contribute
range-normalized absolute differences, and a missing value on either side
counts as maximally dissimilar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import CATEGORICAL, NUMERIC, DataError, Dataset, Record


@dataclass(frozen=True)
class KnnParams:
    k: int = 10
    distance: str = "heom"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.distance != "heom":
            raise ValueError(f"unsupported distance: {self.distance!r}")


def fit_numeric_ranges(dataset: Dataset, exclude=()) -> dict[int, float]:
    """Per numeric attribute, max minus min over its known values."""
    skip = frozenset(exclude)
    ranges = {}
    for j, attr in enumerate(dataset.schema):
        if attr.kind != NUMERIC or j in skip:
            continue
        values = [float(v) for v in dataset.present_values(j)]
        ranges[j] = (max(values) - min(values)) if values else 0.0
    return ranges


def heom_distance(a: Record, b: Record, schema, ranges, exclude=()) -> float:
    """HEOM distance between two records.

    Per attribute: 1 when either cell is missing; equality overlap for
    categorical; |x - y| / range for numeric (a zero range contributes 0 for
    equal present values, else 1).  The distance is sqrt of the summed
    squared terms.
    """
    skip = frozenset(exclude)
    total = 0.0
    for j, attr in enumerate(schema):
        if j in skip:
            continue
        va, vb = a.cells[j], b.cells[j]
        if va is None or vb is None:
            term = 1.0
        elif attr.kind == NUMERIC:
            x, y = float(va), float(vb)
            rng = ranges.get(j, 0.0)
            if rng > 0.0:
                term = abs(x - y) / rng
            else:
                term = 0.0 if x == y else 1.0
        else:
            term = 0.0 if va == vb else 1.0
        total += term * term
    return math.sqrt(total)


class KnnImputer:
    """Brute-force scan imputer bound to one dataset.

    Column encodings and presence masks are built once, so repeated cell
    imputations against the same dataset stay cheap.  Evidence is always the
    dataset as given (never previously imputed values).
    """

    def __init__(self, dataset: Dataset, params: KnnParams | None = None, exclude=()):
        self.dataset = dataset
        self.params = params or KnnParams()
        self.exclude = frozenset(exclude)
        self.ranges = fit_numeric_ranges(dataset, self.exclude)

        n = dataset.n_records
        self._ids = np.array([r.id for r in dataset.records], dtype=np.int64)
        self._present = [
            np.array([r.cells[j] is not None for r in dataset.records], dtype=bool)
            for j in range(dataset.n_attributes)
        ]
        # One encoded column per participating attribute, in schema order so
        # the accumulation below matches the scalar formula term for term.
        self._columns = []
        for j, attr in enumerate(dataset.schema):
            if j in self.exclude:
                continue
            if attr.kind == NUMERIC:
                col = np.array(
                    [float(r.cells[j]) if r.cells[j] is not None else math.nan
                     for r in dataset.records],
                    dtype=np.float64,
                )
                self._columns.append((j, NUMERIC, col, self.ranges.get(j, 0.0)))
            else:
                codes = np.array(
                    [dataset.level_index(j, r.cells[j]) if r.cells[j] is not None else -1
                     for r in dataset.records],
                    dtype=np.int64,
                )
                self._columns.append((j, CATEGORICAL, codes, None))
        self._n = n

    def squared_distances(self, record: Record) -> np.ndarray:
        """HEOM squared distance from ``record`` to every dataset record."""
        total = np.zeros(self._n, dtype=np.float64)
        for j, kind, col, rng in self._columns:
            cell = record.cells[j]
            if cell is None:
                total += 1.0
                continue
            if kind == NUMERIC:
                x = float(cell)
                present = ~np.isnan(col)
                if rng > 0.0:
                    term = np.where(present, np.abs(col - x) / rng, 1.0)
                else:
                    term = np.where(present & (col == x), 0.0, 1.0)
            else:
                code = self.dataset.level_index(j, cell)
                term = np.where(col == code, 0.0, 1.0)
            total += term * term
        return total

    def neighbors(self, record: Record, attribute: int, squared=None) -> list[int]:
        """Ids of the k nearest candidates holding a value at ``attribute``.

        Candidates are every other record with a present target value; ties
        on distance break by ascending record id; fewer than k candidates
        means all of them.  ``squared`` may pass a precomputed distance
        vector so one record's cells share a single scan.
        """
        candidates = np.flatnonzero(self._present[attribute] & (self._ids != record.id))
        if candidates.size == 0:
            return []
        if squared is None:
            squared = self.squared_distances(record)
        d2 = squared[candidates]
        ids = self._ids[candidates]
        order = np.lexsort((ids, d2))
        chosen = candidates[order[: self.params.k]]
        return [int(self._ids[p]) for p in chosen]

    def impute(self, record: Record, attribute: int, squared=None):
        """(imputed value, neighbor ids); empty ids when the global fallback ran."""
        attr = self.dataset.schema[attribute]
        neighbor_ids = self.neighbors(record, attribute, squared)
        if not neighbor_ids:
            return self._global_fallback(attribute), ()
        values = [self.dataset.record_by_id(i).cells[attribute] for i in neighbor_ids]
        if attr.kind == NUMERIC:
            numbers = [float(v) for v in values]
            return sum(numbers) / len(numbers), tuple(neighbor_ids)
        tally: dict[int, int] = {}
        for v in values:
            code = self.dataset.level_index(attribute, v)
            tally[code] = tally.get(code, 0) + 1
        winner = min(tally, key=lambda code: (-tally[code], code))
        return attr.levels[winner], tuple(neighbor_ids)

    def _global_fallback(self, attribute: int):
        # No candidate holds the target value: fall back to the dataset-wide
        # mode (categorical) or mean (numeric) over the known values.
        attr = self.dataset.schema[attribute]
        values = self.dataset.present_values(attribute)
        if not values:
            raise DataError(
                f"attribute {attr.name!r} has no known value anywhere; cannot impute"
            )
        if attr.kind == NUMERIC:
            numbers = [float(v) for v in values]
            return sum(numbers) / len(numbers)
        tally: dict[int, int] = {}
        for v in values:
            code = self.dataset.level_index(attribute, v)
            tally[code] = tally.get(code, 0) + 1
        winner = min(tally, key=lambda code: (-tally[code], code))
        return attr.levels[winner]


def impute_knn(record: Record, attribute: int, dataset: Dataset,
               params: KnnParams | None = None, exclude=()):
    """One-shot kNN imputation of a single missing cell."""
    if record.cells[attribute] is not None:
        raise ValueError("target cell is not missing")
    value, _ = KnnImputer(dataset, params, exclude).impute(record, attribute)
    return value
