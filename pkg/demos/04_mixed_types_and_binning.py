"""Mixed-type data: quantile binning, HEOM distances, numeric de-binning.

Numeric columns join mining through fitted bins; a rule that predicts a bin
is turned back into a number via the bin's representative value, and the
kNN fallback measures mixed records with the HEOM metric.
"""

import tempfile
from pathlib import Path

from rulefill import (
    NUMERIC,
    KnnParams,
    MiningParams,
    bin_of,
    fit_all_bins,
    fit_bins,
    fit_numeric_ranges,
    heom_distance,
    impute_dataset,
    load_csv,
    mine_rules,
)
from rulefill.sample_data import write_credit_csv

print("equal-frequency bins over a skewed column:")
values = [1, 2, 3, 4, 100]
bins = fit_bins(values, n_bins=2, strategy="frequency")
print(f"    values {values} -> edges {bins.edges}, representatives {bins.representatives}")
for v in (2, 3, 50, 100):
    print(f"    bin_of({v}) = {bin_of(v, bins)}")

work = Path(tempfile.mkdtemp())
csv_path = work / "credit.csv"
write_credit_csv(csv_path)
dataset = load_csv(csv_path, "?", class_column="class")
numeric = [a.name for a in dataset.schema if a.kind == NUMERIC]
print(f"\ncredit-like table: {dataset.n_records} records, numeric columns {numeric}")
print(f"pre-existing missing cells: {len(dataset.missing_cells())}")

all_bins = fit_all_bins(dataset, n_bins=5, strategy="frequency")
j = dataset.attribute_index(numeric[0])
print(f"fitted bins for {numeric[0]!r}: edges {tuple(round(e, 2) for e in all_bins[j].edges)}")

ranges = fit_numeric_ranges(dataset)
a, b = dataset.records[0], dataset.records[1]
print(f"\nHEOM distance between records 0 and 1: "
      f"{heom_distance(a, b, dataset.schema, ranges):.4f}")
print(f"identical record distance: {heom_distance(a, a, dataset.schema, ranges):.4f}")

rules = mine_rules(dataset, MiningParams(0.40, 0.60, min_support_count=60), all_bins)
completed, report = impute_dataset(dataset, rules, KnnParams(k=10), all_bins)
print(
    f"\nimputed the table's own {report.n_imputed} missing cells: "
    f"{report.n_from_rules} from rules, {report.n_from_knn} from knn"
)
numeric_cells = [
    c for c in report.cells if dataset.schema[c.attribute].kind == NUMERIC
]
for cell in numeric_cells[:3]:
    name = report.attribute_names[cell.attribute]
    print(f"    {name}[record {cell.record_id}] <- {cell.value:.3f} ({cell.source})")
print(f"missing cells left: {len(completed.missing_cells())}")
