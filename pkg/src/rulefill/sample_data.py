"""Deterministic synthetic datasets shaped like the usual benchmark files.

These generators let the tests and demos run without downloaded data: a
car-acceptability table (1728 rows, six categorical attributes plus a class
fixed by a hand-written hierarchical rule) and a mixed-type credit-screening
table (690 rows, 15 attributes plus a class, with a few "?" cells).

The car rows are sampled from a correlated market model rather than the
complete attribute grid: a full factorial has mutually independent columns,
which leaves nothing for any imputer to learn from, so benchmark trends only
show up on data with real attribute structure.  Real benchmark CSVs can be
dropped in via RULEFILL_DATA_DIR and used instead wherever a path is
accepted.
"""

from __future__ import annotations

import csv
import random

CAR_COLUMNS = ("buying", "maint", "doors", "persons", "lug_boot", "safety", "class")
CAR_LEVELS = {
    "buying": ("vhigh", "high", "med", "low"),
    "maint": ("vhigh", "high", "med", "low"),
    "doors": ("2", "3", "4", "5more"),
    "persons": ("2", "4", "more"),
    "lug_boot": ("small", "med", "big"),
    "safety": ("low", "med", "high"),
}

_PRICE = {"vhigh": 0, "high": 1, "med": 2, "low": 3}
_DOORS = {"2": 0, "3": 1, "4": 2, "5more": 2}
_LUG = {"small": 0, "med": 1, "big": 2}
_PERSONS = {"4": 1, "more": 2}


def car_acceptability(buying, maint, doors, persons, lug_boot, safety) -> str:
    """Hierarchical acceptability rule for the synthetic car grid.

    Hard rejections first (no safety, two seats), then price and comfort
    scores decide the graded classes.  Top grades require high safety, so
    the class carries real information about the other attributes.
    """
    if safety == "low" or persons == "2":
        return "unacc"
    price = _PRICE[buying] + _PRICE[maint]                       # 0..6
    comfort = _DOORS[doors] + _LUG[lug_boot] + _PERSONS[persons]  # 1..6
    if price <= 1:
        return "unacc"
    if price <= 3 and comfort <= 2:
        return "unacc"
    if price <= 3 and safety == "med" and comfort <= 3:
        return "unacc"
    if safety == "high":
        if price >= 5 and comfort >= 3:
            return "vgood"
        if price == 6 or (price == 4 and comfort >= 5):
            return "good"
    elif price == 6 and comfort >= 2:
        return "good"
    elif price == 5 and comfort >= 4:
        return "good"
    return "acc"


# Per market segment: choice weights for each attribute, in level order.
_SEGMENTS = ("budget", "mid", "premium")
_SEGMENT_WEIGHTS = (5, 7, 4)
_CAR_MODEL = {
    #            vhigh high med low          (buying / maint)
    "buying": {"budget": (1, 2, 5, 8), "mid": (1, 4, 6, 3), "premium": (6, 6, 2, 1)},
    "maint": {"budget": (1, 2, 5, 7), "mid": (2, 4, 5, 3), "premium": (5, 6, 3, 1)},
    #            2  3  4  5more
    "doors": {"budget": (6, 5, 2, 1), "mid": (1, 3, 6, 4), "premium": (4, 4, 3, 1)},
    #            2  4  more
    "persons": {"budget": (5, 4, 1), "mid": (1, 5, 5), "premium": (4, 5, 2)},
    #            small med big
    "lug_boot": {"budget": (6, 3, 1), "mid": (1, 4, 5), "premium": (2, 5, 4)},
    #            low med high
    "safety": {"budget": (6, 3, 1), "mid": (2, 5, 4), "premium": (1, 3, 7)},
}


def car_rows(seed: int = 20260811, n: int = 1728):
    """n sampled rows over the car attribute space, class last.

    Attributes are drawn conditionally on a latent market segment, so
    neighbors genuinely inform each other; the class label stays a
    deterministic function of the attributes.
    """
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        segment = rng.choices(_SEGMENTS, weights=_SEGMENT_WEIGHTS)[0]
        combo = tuple(
            rng.choices(CAR_LEVELS[column], weights=_CAR_MODEL[column][segment])[0]
            for column in CAR_COLUMNS[:-1]
        )
        rows.append((*combo, car_acceptability(*combo)))
    return rows


def write_car_csv(path, seed: int = 20260811) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CAR_COLUMNS)
        writer.writerows(car_rows(seed))


CREDIT_COLUMNS = tuple(f"a{i}" for i in range(1, 16)) + ("class",)


def credit_rows(seed: int = 20260811, n: int = 690, missing_rate: float = 0.012):
    """Mixed-type rows driven by one latent score, with sparse "?" cells.

    Column layout mirrors the usual credit-screening file: categorical and
    numeric columns interleaved, two class labels, and missing markers in a
    handful of columns.
    """
    rng = random.Random(seed)
    maybe_missing = {0, 1, 3, 4, 5, 6, 13}  # columns that may hold "?"
    rows = []
    for _ in range(n):
        z = rng.random()  # latent creditworthiness

        def pick(levels, weights_good, weights_bad):
            weights = [
                z * wg + (1.0 - z) * wb for wg, wb in zip(weights_good, weights_bad)
            ]
            return rng.choices(levels, weights=weights)[0]

        age = 18.0 + 40.0 * z + rng.gauss(0.0, 6.0)
        debt = max(0.0, 12.0 * (1.0 - z) + rng.gauss(0.0, 3.0))
        years = max(0.0, 8.0 * z + rng.gauss(0.0, 2.0))
        credit = max(0.0, 10.0 * z + rng.gauss(0.0, 2.5))
        income = max(0.0, 2000.0 * z * z + rng.gauss(0.0, 300.0))

        row = [
            pick(("a", "b"), (3, 1), (1, 2)),
            f"{max(15.0, age):.2f}",
            f"{debt:.3f}",
            pick(("u", "y", "l"), (5, 2, 1), (2, 5, 1)),
            pick(("g", "p", "gg"), (5, 2, 1), (2, 5, 1)),
            pick(("c", "d", "i", "k", "m", "q", "w", "x"),
                 (4, 2, 1, 2, 3, 4, 3, 2), (2, 3, 4, 2, 1, 1, 2, 3)),
            pick(("v", "h", "bb", "ff"), (5, 3, 1, 1), (2, 1, 3, 4)),
            f"{years:.3f}",
            "t" if z + rng.gauss(0.0, 0.18) > 0.45 else "f",
            "t" if z + rng.gauss(0.0, 0.25) > 0.6 else "f",
            f"{credit:.0f}",
            pick(("t", "f"), (1, 1), (1, 1)),
            pick(("g", "s", "p"), (6, 2, 1), (4, 3, 1)),
            f"{100.0 + 260.0 * (1.0 - z) + rng.gauss(0.0, 40.0):.0f}",
            f"{income:.0f}",
            "+" if z + rng.gauss(0.0, 0.15) > 0.5 else "-",
        ]
        for j in maybe_missing:
            if rng.random() < missing_rate:
                row[j] = "?"
        rows.append(tuple(row))
    return rows


def write_credit_csv(path, seed: int = 20260811) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CREDIT_COLUMNS)
        writer.writerows(credit_rows(seed))
