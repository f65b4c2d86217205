"""Rule-set files: one JSON header line, then one JSON rule per line.

The header records the schema the rules were mined against (plus any numeric
binning and the mining parameters), so a consumer can refuse a mismatched
dataset and can turn bin consequents back into numbers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .binning import Bins
from .data import AttributeSchema, DataError, Dataset
from .mining import AssociationRule, MiningParams

FORMAT = "rulefill-rules-v1"


def rule_to_dict(rule: AssociationRule) -> dict:
    return {
        "antecedent": [list(item) for item in sorted(rule.antecedent)],
        "consequent": list(rule.consequent),
        "support": rule.support,
        "confidence": rule.confidence,
    }


def rule_from_dict(payload: dict) -> AssociationRule:
    return AssociationRule(
        antecedent=frozenset(tuple(item) for item in payload["antecedent"]),
        consequent=tuple(payload["consequent"]),
        support=payload["support"],
        confidence=payload["confidence"],
    )


@dataclass
class RuleFile:
    rules: list[AssociationRule]
    schema: list[AttributeSchema]
    class_column: str | None
    bins: dict[int, Bins]
    params: MiningParams | None


def write_rules(path, rules, dataset: Dataset, bins=None,
                params: MiningParams | None = None) -> None:
    header = {
        "format": FORMAT,
        "schema": [
            {"name": a.name, "kind": a.kind, "levels": list(a.levels)}
            for a in dataset.schema
        ],
        "class_column": dataset.class_column,
        "bins": {
            str(j): {"edges": list(b.edges), "representatives": list(b.representatives)}
            for j, b in sorted((bins or {}).items())
        },
        "params": asdict(params) if params is not None else None,
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for rule in rules:
            fh.write(json.dumps(rule_to_dict(rule), sort_keys=True) + "\n")


def read_rules(path) -> RuleFile:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        if not first.strip():
            raise DataError(f"{path}: empty rule file")
        try:
            header = json.loads(first)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: bad rule-file header: {exc}") from None
        if header.get("format") != FORMAT:
            raise DataError(f"{path}: not a {FORMAT} file")
        rules = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                rules.append(rule_from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"{path}: line {lineno}: bad rule record: {exc}") from None

    schema = [
        AttributeSchema(entry["name"], entry["kind"], tuple(entry["levels"]))
        for entry in header["schema"]
    ]
    bins = {
        int(j): Bins(tuple(spec["edges"]), tuple(spec["representatives"]))
        for j, spec in header.get("bins", {}).items()
    }
    raw_params = header.get("params")
    params = MiningParams(**raw_params) if raw_params else None
    return RuleFile(rules, schema, header.get("class_column"), bins, params)


def check_compatible(rule_file: RuleFile, dataset: Dataset) -> None:
    """Raise DataError unless the dataset matches the rule file's schema."""
    ours = [(a.name, a.kind, a.levels) for a in dataset.schema]
    theirs = [(a.name, a.kind, a.levels) for a in rule_file.schema]
    if len(ours) != len(theirs):
        raise DataError(
            f"rule file schema has {len(theirs)} attributes, dataset has {len(ours)}"
        )
    for position, (mine, other) in enumerate(zip(ours, theirs)):
        if mine != other:
            raise DataError(
                f"rule file schema does not match dataset at column {position}: "
                f"expected {other[0]!r} ({other[1]}), found {mine[0]!r} ({mine[1]})"
            )
