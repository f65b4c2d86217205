import os
from pathlib import Path

import pytest

from rulefill import load_csv
from rulefill.sample_data import write_car_csv, write_credit_csv

DATA_DIR_ENV = "RULEFILL_DATA_DIR"


def _resolve(name, generator, tmp_dir: Path) -> Path:
    """Prefer a real benchmark file from RULEFILL_DATA_DIR, else synthesize."""
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir:
        candidate = Path(data_dir) / name
        if candidate.exists():
            return candidate
    path = tmp_dir / name
    generator(path)
    return path


@pytest.fixture(scope="session")
def car_csv(tmp_path_factory) -> Path:
    return _resolve("car.csv", write_car_csv, tmp_path_factory.mktemp("data"))


@pytest.fixture(scope="session")
def credit_csv(tmp_path_factory) -> Path:
    return _resolve("crx.csv", write_credit_csv, tmp_path_factory.mktemp("data"))


@pytest.fixture(scope="session")
def car_dataset(car_csv):
    probe = load_csv(car_csv, "?")
    return load_csv(car_csv, "?", class_column=probe.schema[-1].name)


@pytest.fixture(scope="session")
def credit_dataset(credit_csv):
    probe = load_csv(credit_csv, "?")
    return load_csv(credit_csv, "?", class_column=probe.schema[-1].name)
