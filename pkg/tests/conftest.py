import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fairdep import Column, Dataset, Schema
from fairdep.data import dataset_from_arrays


@pytest.fixture
def toy_schema():
    """Three features: a two-category split, a count, a three-way age band."""
    return Schema(
        columns=(
            Column("gender", "categorical", categories=("male", "female")),
            Column("ncrimes", "numeric"),
            Column("age", "categorical", categories=("<30", "30-60", ">60")),
        ),
        label="recid",
        positive="yes",
    )


@pytest.fixture
def toy_dataset(toy_schema) -> Dataset:
    return dataset_from_arrays(
        toy_schema,
        features=[
            np.array(["male", "female", "female"], dtype=object),
            np.array([2.0, 0.0, 1.0]),
            np.array(["30-60", "<30", ">60"], dtype=object),
        ],
        y=np.array([1, -1, -1]),
    )


TOY_EXTENDED = np.array(
    [
        [1, 0, 2, 0, 1, 0],
        [0, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 0, 1],
    ],
    dtype=float,
)


@pytest.fixture
def toy_csv(tmp_path, toy_schema):
    path = tmp_path / "toy.csv"
    path.write_text(
        "gender,ncrimes,age,recid\n"
        "male,2,30-60,yes\n"
        "female,0,<30,no\n"
        "female,1,>60,no\n",
        encoding="utf-8",
    )
    return path
