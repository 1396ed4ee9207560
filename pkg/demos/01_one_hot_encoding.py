"""Walk through the data model on a three-row toy table.

A categorical feature with q categories becomes q indicator columns, a
binary feature becomes a single 0/1 column, and numeric features pass
through unchanged. Run it:

    python demos/01_one_hot_encoding.py
"""

import numpy as np

from fairdep import Column, Schema, encode
from fairdep.data import dataset_from_arrays

schema = Schema(
    columns=(
        Column("gender", "categorical", categories=("male", "female")),
        Column("ncrimes", "numeric"),
        Column("age", "categorical", categories=("<30", "30-60", ">60")),
    ),
    label="recid",
    positive="yes",
)

dataset = dataset_from_arrays(
    schema,
    features=[
        np.array(["male", "female", "female"], dtype=object),
        np.array([2.0, 0.0, 1.0]),
        np.array(["30-60", "<30", ">60"], dtype=object),
    ],
    y=np.array([1, -1, -1]),
)

print("raw table (3 features):")
for i in range(dataset.n):
    print("   ", [str(col[i]) for col in dataset.features], "label:", dataset.y[i])

encoded = encode(dataset)
print(f"\nextended matrix is {encoded.n} x {encoded.width}:")
print("   ", " ".join(f"{s.name:>13}" for s in encoded.subfeatures))
for row in encoded.matrix:
    print("   ", " ".join(f"{v:>13.0f}" for v in row))

print("\neach categorical block sums to one per row (one-hot property):")
for j, col in enumerate(encoded.schema.columns):
    if col.kind == "categorical":
        block = encoded.matrix[:, list(encoded.parent_columns[j])]
        print(f"    {col.name}: row sums {block.sum(axis=1).tolist()}")

print("\nand every block decodes back to the original column:")
for j, col in enumerate(encoded.schema.columns):
    print(f"    {col.name}: {encoded.decode_parent(j).tolist()}")
