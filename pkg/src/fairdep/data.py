"""Schema-driven CSV ingestion and one-hot encoding.

A Schema declares, per column, whether it is numeric, binary, or
categorical (with an ordered category list), plus the label column and
its positive value. Loading maps the label onto {-1, +1}, drops rows
with missing cells, and validates every categorical value against the
declaration. Encoding expands each categorical column with q categories
into q indicator columns, maps binary columns to a single 0/1 column,
and passes numeric columns through, producing the extended matrix used
by the dependence scorer.

Categorical columns may carry a `recode` map (raw value -> category) or,
for numeric sources, ascending `bins` cut points; intervals are
half-open on the right, so bins=[25, 60] buckets values as x < 25,
25 <= x < 60, x >= 60.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import DataError, SchemaError

NUMERIC = "numeric"
BINARY = "binary"
CATEGORICAL = "categorical"
COLUMN_KINDS = (NUMERIC, BINARY, CATEGORICAL)

DEFAULT_MISSING = ("", "?", "NA")


@dataclass(frozen=True)
class Column:
    """Declaration of one feature column.

    `recode` maps raw values onto declared categories; `recode_default`
    catches everything the map misses (handy for groupings like
    US/non-US where enumerating the long tail is pointless). `bins`
    turns a numeric source column into ordered categories.
    """

    name: str
    kind: str
    categories: tuple[str, ...] | None = None
    candidate_sensitive: bool | None = None  # None -> detector default by kind
    recode: dict[str, str] | None = None
    recode_default: str | None = None
    bins: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in COLUMN_KINDS:
            raise SchemaError(f"column {self.name!r}: unknown kind {self.kind!r}")
        if self.categories is not None:
            object.__setattr__(self, "categories", tuple(str(c) for c in self.categories))
            if len(set(self.categories)) != len(self.categories):
                raise SchemaError(f"column {self.name!r}: duplicate categories")
        if self.kind == CATEGORICAL:
            if self.categories is None or len(self.categories) < 2:
                raise SchemaError(
                    f"column {self.name!r}: categorical needs >= 2 declared categories"
                )
        elif self.kind == BINARY:
            if self.categories is not None and len(self.categories) != 2:
                raise SchemaError(
                    f"column {self.name!r}: binary categories, when given, must be a pair"
                )
        elif self.categories is not None:
            raise SchemaError(f"column {self.name!r}: numeric columns take no categories")
        if (self.recode is not None or self.recode_default is not None) and self.kind != CATEGORICAL:
            raise SchemaError(f"column {self.name!r}: recode applies to categorical columns only")
        if self.recode_default is not None and self.recode_default not in (self.categories or ()):
            raise SchemaError(
                f"column {self.name!r}: recode_default {self.recode_default!r} "
                "is not a declared category"
            )
        if self.bins is not None:
            if self.kind != CATEGORICAL:
                raise SchemaError(f"column {self.name!r}: bins apply to categorical columns only")
            object.__setattr__(self, "bins", tuple(float(b) for b in self.bins))
            if list(self.bins) != sorted(self.bins):
                raise SchemaError(f"column {self.name!r}: bins must be ascending")
            if len(self.categories) != len(self.bins) + 1:
                raise SchemaError(
                    f"column {self.name!r}: {len(self.bins)} bin edges need "
                    f"{len(self.bins) + 1} categories, got {len(self.categories)}"
                )


@dataclass(frozen=True)
class Schema:
    """Column declarations plus the label column and its positive value."""

    columns: tuple[Column, ...]
    label: str
    positive: str
    missing_values: tuple[str, ...] = DEFAULT_MISSING

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate column names in schema")
        if not self.columns:
            raise SchemaError("schema declares no feature columns")
        if self.label in names:
            raise SchemaError(f"label column {self.label!r} also declared as a feature")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @classmethod
    def from_dict(cls, doc: dict) -> "Schema":
        try:
            columns = tuple(
                Column(
                    name=str(c["name"]),
                    kind=str(c["kind"]),
                    categories=tuple(c["categories"]) if "categories" in c else None,
                    candidate_sensitive=c.get("candidate_sensitive"),
                    recode={str(k): str(v) for k, v in c["recode"].items()}
                    if "recode" in c
                    else None,
                    recode_default=c.get("recode_default"),
                    bins=tuple(c["bins"]) if "bins" in c else None,
                )
                for c in doc["columns"]
            )
            label = doc["label"]
            return cls(
                columns=columns,
                label=str(label["name"]),
                positive=str(label["positive"]),
                missing_values=tuple(doc.get("missing_values", DEFAULT_MISSING)),
            )
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed schema document: {exc}") from exc

    @classmethod
    def from_json(cls, path) -> "Schema":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"schema file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        cols = []
        for c in self.columns:
            entry: dict = {"name": c.name, "kind": c.kind}
            if c.categories is not None:
                entry["categories"] = list(c.categories)
            if c.candidate_sensitive is not None:
                entry["candidate_sensitive"] = c.candidate_sensitive
            if c.recode is not None:
                entry["recode"] = dict(c.recode)
            if c.recode_default is not None:
                entry["recode_default"] = c.recode_default
            if c.bins is not None:
                entry["bins"] = list(c.bins)
            cols.append(entry)
        return {
            "columns": cols,
            "label": {"name": self.label, "positive": self.positive},
            "missing_values": list(self.missing_values),
        }


@dataclass(frozen=True)
class Dataset:
    """Validated samples: one array per feature column plus labels in {-1, +1}.

    Numeric columns are float64 arrays; binary and categorical columns
    keep their (string) category values. `negative_display` remembers
    the raw negative label when the source used a single one, so writers
    can round-trip it. Immutable after construction.
    """

    schema: Schema
    features: tuple[np.ndarray, ...]
    y: np.ndarray
    dropped_rows: int = 0
    negative_display: str | None = None

    def __post_init__(self):
        if len(self.features) != len(self.schema.columns):
            raise DataError("feature count does not match schema")
        n = self.y.shape[0]
        if n < 2:
            raise DataError(f"need at least 2 samples, got {n}")
        if any(col.shape[0] != n for col in self.features):
            raise DataError("feature columns and labels have mismatched lengths")
        values = set(np.unique(self.y).tolist())
        if not values <= {-1, 1}:
            raise DataError(f"labels must lie in {{-1, +1}}, got {sorted(values)}")
        if len(values) < 2:
            raise DataError("degenerate labels: only one class present")

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def m(self) -> int:
        return len(self.features)

    def take(self, indices) -> "Dataset":
        """Row subset (used by subsampling); keeps the drop count."""
        idx = np.asarray(indices)
        return replace(
            self,
            features=tuple(col[idx] for col in self.features),
            y=self.y[idx],
        )


@dataclass(frozen=True)
class Subfeature:
    """One column of the extended matrix and where it came from."""

    name: str
    parent: int
    parent_name: str
    category: str | None  # None for numeric passthrough columns
    column: int


@dataclass(frozen=True)
class EncodedDataset:
    """Extended matrix after one-hot encoding, with provenance maps."""

    schema: Schema
    matrix: np.ndarray
    subfeatures: tuple[Subfeature, ...]
    parent_columns: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def width(self) -> int:
        return int(self.matrix.shape[1])

    def column(self, index: int) -> np.ndarray:
        return self.matrix[:, index]

    def decode_parent(self, parent: int) -> np.ndarray:
        """Recover the original column values from the encoded block.

        encode() resolves undeclared binary pairs into the schema it
        stores, so every non-numeric column decodes unambiguously.
        """
        col = self.schema.columns[parent]
        block = self.parent_columns[parent]
        if col.kind == NUMERIC:
            return self.matrix[:, block[0]].copy()
        if col.kind == BINARY:
            zero_cat, one_cat = col.categories
            return np.where(self.matrix[:, block[0]] > 0.5, one_cat, zero_cat)
        cats = np.array(col.categories, dtype=object)
        picks = np.argmax(self.matrix[:, list(block)], axis=1)
        return cats[picks]


def _open_csv(csv_source):
    if hasattr(csv_source, "read"):
        return csv_source, False
    return open(csv_source, "r", encoding="utf-8", newline=""), True


def load_dataset(csv_source, schema: Schema) -> Dataset:
    """Read a headered CSV into a validated Dataset.

    Rows with a missing marker in any schema column (features or label)
    are dropped and counted in `dropped_rows`. Cell whitespace is
    stripped before interpretation.
    """
    fh, should_close = _open_csv(csv_source)
    try:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("CSV is empty") from None
        header = [h.strip() for h in header]
        positions = {name: i for i, name in enumerate(header)}
        needed = list(schema.names) + [schema.label]
        for name in needed:
            if name not in positions:
                raise DataError(f"unknown column: {name!r} not in CSV header")
        missing = set(schema.missing_values)

        raw_columns: list[list[str]] = [[] for _ in needed]
        dropped = 0
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                cells = [row[positions[name]].strip() for name in needed]
            except IndexError:
                raise DataError(f"row {row_no}: too few fields") from None
            if any(cell in missing for cell in cells):
                dropped += 1
                continue
            for store, cell in zip(raw_columns, cells):
                store.append(cell)

        n = len(raw_columns[-1])
        if n < 2:
            raise DataError(f"fewer than 2 rows survive missing-value removal (got {n})")

        features = tuple(
            _interpret_column(col, raw_columns[i]) for i, col in enumerate(schema.columns)
        )
        label_cells = raw_columns[-1]
        y = np.where(np.asarray(label_cells, dtype=object) == schema.positive, 1, -1).astype(
            np.int64
        )
        if schema.positive not in label_cells:
            raise DataError(
                f"degenerate labels: positive value {schema.positive!r} never observed"
            )
        if int(np.sum(y == 1)) == n:
            raise DataError("degenerate labels: only the positive class present")
        negatives = sorted({cell for cell in label_cells if cell != schema.positive})
        return Dataset(
            schema=schema,
            features=features,
            y=y,
            dropped_rows=dropped,
            negative_display=negatives[0] if len(negatives) == 1 else None,
        )
    finally:
        if should_close:
            fh.close()


def _interpret_column(col: Column, cells: list[str]) -> np.ndarray:
    if col.kind == NUMERIC:
        return _parse_floats(col.name, cells)
    if col.bins is not None:
        values = _parse_floats(col.name, cells)
        idx = np.searchsorted(np.asarray(col.bins), values, side="right")
        cats = np.array(col.categories, dtype=object)
        return cats[idx]
    out = np.asarray(cells, dtype=object)
    if col.recode:
        out = np.array([col.recode.get(v, v) for v in out], dtype=object)
    if col.kind == CATEGORICAL:
        declared = set(col.categories)
        if col.recode_default is not None:
            out = np.array(
                [v if v in declared else col.recode_default for v in out], dtype=object
            )
        observed = set(out.tolist())
        extra = observed - declared
        if extra:
            raise DataError(
                f"column {col.name!r}: undeclared category values {sorted(extra)!r}"
            )
    else:  # binary
        observed = sorted(set(out.tolist()))
        if col.categories is not None:
            extra = set(observed) - set(col.categories)
            if extra:
                raise DataError(
                    f"column {col.name!r}: values {sorted(extra)!r} outside declared pair"
                )
        elif len(observed) != 2:
            raise DataError(
                f"column {col.name!r}: binary column has {len(observed)} distinct "
                f"values, expected exactly 2"
            )
    return out


def _parse_floats(name: str, cells: list[str]) -> np.ndarray:
    try:
        return np.asarray(cells, dtype=np.float64)
    except ValueError:
        for cell in cells:
            try:
                float(cell)
            except ValueError:
                raise DataError(f"column {name!r}: non-numeric value {cell!r}") from None
        raise


def binary_pair(col: Column, values: np.ndarray) -> tuple[str, str]:
    """(zero_category, one_category) for a binary column.

    Declared categories fix the order (first -> 0, second -> 1);
    otherwise the lexicographically larger observed value maps to 1, so
    the encoding never depends on row order.
    """
    if col.categories is not None:
        return col.categories[0], col.categories[1]
    observed = sorted(set(values.tolist()))
    if len(observed) == 1:
        raise DataError(
            f"column {col.name!r}: constant binary column and no declared pair"
        )
    return observed[0], observed[1]


def encode(dataset: Dataset) -> EncodedDataset:
    """One-hot encode into the extended matrix.

    Categorical columns with q categories become q indicator columns in
    declared order; binary columns one 0/1 column; numeric columns are
    copied unchanged. Each categorical row block sums to exactly 1.
    """
    blocks: list[np.ndarray] = []
    subfeatures: list[Subfeature] = []
    parent_columns: list[tuple[int, ...]] = []
    resolved: list[Column] = []
    next_col = 0
    for j, col in enumerate(dataset.schema.columns):
        values = dataset.features[j]
        if col.kind == NUMERIC:
            resolved.append(col)
            blocks.append(values.astype(np.float64).reshape(-1, 1))
            subfeatures.append(Subfeature(col.name, j, col.name, None, next_col))
            parent_columns.append((next_col,))
            next_col += 1
        elif col.kind == BINARY:
            zero_cat, one_cat = binary_pair(col, values)
            resolved.append(replace(col, categories=(zero_cat, one_cat)))
            indicator = (values == one_cat).astype(np.float64).reshape(-1, 1)
            blocks.append(indicator)
            subfeatures.append(
                Subfeature(f"{col.name}_{one_cat}", j, col.name, one_cat, next_col)
            )
            parent_columns.append((next_col,))
            next_col += 1
        else:
            resolved.append(col)
            cats = col.categories
            block = np.zeros((dataset.n, len(cats)), dtype=np.float64)
            for k, cat in enumerate(cats):
                block[:, k] = values == cat
                subfeatures.append(
                    Subfeature(f"{col.name}_{cat}", j, col.name, cat, next_col + k)
                )
            blocks.append(block)
            parent_columns.append(tuple(range(next_col, next_col + len(cats))))
            next_col += len(cats)
    matrix = np.hstack(blocks)
    matrix.setflags(write=False)
    return EncodedDataset(
        schema=replace(dataset.schema, columns=tuple(resolved)),
        matrix=matrix,
        subfeatures=tuple(subfeatures),
        parent_columns=tuple(parent_columns),
    )


def standardize_numeric(encoded: EncodedDataset) -> EncodedDataset:
    """Z-score the numeric passthrough columns; indicators are untouched.

    Zero-variance columns are only mean-centered. Off by default in the
    pipeline: the RBF kernel's 1/n scaling is the only normalization the
    dependence measure assumes.
    """
    matrix = encoded.matrix.copy()
    for j, col in enumerate(encoded.schema.columns):
        if col.kind != NUMERIC:
            continue
        c = encoded.parent_columns[j][0]
        v = matrix[:, c]
        sd = v.std()
        matrix[:, c] = (v - v.mean()) / sd if sd > 0 else v - v.mean()
    matrix.setflags(write=False)
    return replace(encoded, matrix=matrix)


def dataset_from_arrays(
    schema: Schema, features, y, dropped_rows: int = 0, negative_display: str | None = None
) -> Dataset:
    """Build a Dataset directly from in-memory columns (synthetic data)."""
    cols = tuple(np.asarray(col) for col in features)
    return Dataset(
        schema=schema,
        features=cols,
        y=np.asarray(y, dtype=np.int64),
        dropped_rows=dropped_rows,
        negative_display=negative_display,
    )


def write_encoded_csv(encoded: EncodedDataset, y, path, negative: str | None = None) -> None:
    """Write the extended matrix with `parent_category` headers plus the label."""
    y = np.asarray(y)
    neg = negative if negative is not None else f"not_{encoded.schema.positive}"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([s.name for s in encoded.subfeatures] + [encoded.schema.label])
        for i in range(encoded.n):
            row = [_format_cell(v) for v in encoded.matrix[i]]
            row.append(encoded.schema.positive if y[i] == 1 else neg)
            writer.writerow(row)


def _format_cell(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def write_dataset_csv(dataset: Dataset, path, negative: str | None = None) -> None:
    """Write a Dataset back out as a raw CSV (header + original cells)."""
    neg = negative if negative is not None else f"not_{dataset.schema.positive}"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(dataset.schema.names) + [dataset.schema.label])
        for i in range(dataset.n):
            row = []
            for j, col in enumerate(dataset.schema.columns):
                v = dataset.features[j][i]
                row.append(_format_cell(v) if col.kind == NUMERIC else str(v))
            row.append(dataset.schema.positive if dataset.y[i] == 1 else neg)
            writer.writerow(row)
