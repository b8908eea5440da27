"""Distance requirement matrices."""
import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .functions import DEFAULT_PAIR_BUDGET, image_distances
from .lee import check_vector, distance_matrix, vector_array

PROVENANCES = ("message", "image", "lee_weight", "custom")


@dataclass(eq=False)
class DistanceMatrix:
    """An M x M matrix of required pairwise distances.

    Entries are stored as a dense int64 array.  The constructor checks for a
    zero diagonal, symmetry and nonnegativity.
    """
    entries: np.ndarray
    provenance: str = "custom"

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"requirement matrix must be square, got shape {a.shape}")
        if (a < 0).any():
            raise ValueError("requirement matrix entries must be nonnegative")
        if (np.diag(a) != 0).any():
            raise ValueError("requirement matrix must have a zero diagonal")
        if (a != a.T).any():
            raise ValueError("requirement matrix must be symmetric")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        a.setflags(write=False)
        self.entries = a

    @property
    def order(self):
        return self.entries.shape[0]

    def __len__(self):
        return self.order

    def __getitem__(self, ij):
        return int(self.entries[ij])

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def tolist(self):
        return self.entries.tolist()

    def upper_sum(self):
        return int(np.triu(self.entries, 1).sum())

    def submatrix(self, rows):
        rows = list(rows)
        return DistanceMatrix(self.entries[np.ix_(rows, rows)], self.provenance)

    def is_constant(self):
        """True when every off-diagonal entry is the same value."""
        M = self.order
        if M < 2:
            return True
        off = self.entries[~np.eye(M, dtype=bool)]
        return bool((off == off[0]).all())

    # serialisation

    def to_json(self):
        return json.dumps({"order": self.order, "entries": self.tolist()})

    @classmethod
    def from_json(cls, text, provenance="custom"):
        doc = json.loads(text)
        mat = cls(doc["entries"] if doc["entries"] else np.zeros((0, 0)), provenance)
        if "order" in doc and doc["order"] != mat.order:
            raise DimensionError(f"declared order {doc['order']} != {mat.order}")
        return mat

    def to_csv(self):
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.tolist())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, provenance="custom"):
        rows = [[int(x) for x in row] for row in csv.reader(io.StringIO(text)) if row]
        return cls(rows if rows else np.zeros((0, 0)), provenance)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json(text)
        return cls.from_csv(text)

    def save(self, path, fmt=None):
        fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() if fmt == "json" else self.to_csv())


def constant_matrix(M, d):
    """The M x M requirement matrix with ``d`` everywhere off the diagonal."""
    a = np.full((M, M), d, dtype=np.int64)
    np.fill_diagonal(a, 0)
    return DistanceMatrix(a)


def _clamp(t, dist):
    return np.maximum(2 * t + 1 - dist, 0)


def message_matrix(f, t, msgs):
    """Requirement matrix for an explicit list of distinct messages.

    Entry (i, j) is ``max(2t + 1 - d(u_i, u_j), 0)`` when ``f`` separates the
    two messages and 0 otherwise.
    """
    if t < 1:
        raise ValueError("threshold t must be >= 1")
    msgs = [check_vector(u, f.m, f.k) for u in msgs]
    if len(set(msgs)) != len(msgs):
        raise ValueError("messages must be distinct")
    vecs = np.asarray(msgs, dtype=np.int64).reshape(len(msgs), f.k)
    labels = np.asarray([f.evaluate(u) for u in msgs], dtype=np.int64)
    dist = distance_matrix(vecs, vecs, f.m)
    a = np.where(labels[:, None] != labels[None, :], _clamp(t, dist), 0)
    return DistanceMatrix(a, "message")


def full_message_matrix(f, t):
    """Message matrix over the whole of Z_m^k in lexicographic order."""
    if t < 1:
        raise ValueError("threshold t must be >= 1")
    vecs = vector_array(f.m, f.k)
    labels = f.values
    dist = distance_matrix(vecs, vecs, f.m)
    a = np.where(labels[:, None] != labels[None, :], _clamp(t, dist), 0)
    return DistanceMatrix(a, "message")


def image_matrix(f, t, budget=DEFAULT_PAIR_BUDGET):
    """eta x eta requirement matrix over the canonical image order."""
    if t < 1:
        raise ValueError("threshold t must be >= 1")
    dist = image_distances(f, budget)
    a = _clamp(t, dist)
    np.fill_diagonal(a, 0)
    return DistanceMatrix(a, "image")


def lee_weight_matrix(k, t, m):
    """Closed-form matrix for the Lee weight function, indices ``0..k*(m//2)``."""
    if t < 1:
        raise ValueError("threshold t must be >= 1")
    idx = np.arange(k * (m // 2) + 1)
    a = _clamp(t, np.abs(idx[:, None] - idx[None, :]))
    np.fill_diagonal(a, 0)
    return DistanceMatrix(a, "lee_weight")
