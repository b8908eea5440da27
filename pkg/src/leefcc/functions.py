"""Functions under protection: evaluation, image distances, function balls, locality."""
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapacityError, DimensionError
from .lee import (ball_volume, check_modulus, check_vector, distance_matrix,
                  enumerate_ball, half_modulus, lee_weight, vector_array,
                  vector_index)

KINDS = ("table", "lee_weight", "lee_weight_dist")

DEFAULT_PAIR_BUDGET = 10**8
# messages we are willing to tabulate
MAX_MESSAGES = 10**7


@dataclass(eq=False)
class FunctionSpec:
    """A function f: Z_m^k -> Im(f) with dense integer labels ``0..eta-1``.

    Table functions are canonicalised so that labels appear in order of first
    occurrence over the lexicographic message scan; ``labels[c]`` recovers the
    original value behind canonical label ``c``.
    """
    m: int
    k: int
    kind: str = "table"
    table: tuple = None
    threshold: int = None
    labels: tuple = field(default=None, repr=False)

    def __post_init__(self):
        self.m = check_modulus(self.m)
        if self.k < 0:
            raise ValueError("message length must be nonnegative")
        if self.kind not in KINDS:
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.kind == "lee_weight_dist":
            if self.threshold is None or int(self.threshold) < 1:
                raise ValueError("lee_weight_dist needs a positive threshold")
            self.threshold = int(self.threshold)
        elif self.threshold is not None:
            raise ValueError("threshold only applies to lee_weight_dist")
        if self.kind == "table":
            if self.table is None or len(self.table) != self.m**self.k:
                raise DimensionError(f"table must list m**k = {self.m**self.k} values")
            canon, order = {}, []
            for v in self.table:
                if v not in canon:
                    canon[v] = len(order)
                    order.append(v)
            self.table = tuple(canon[v] for v in self.table)
            self.labels = tuple(order)
        elif self.table is not None:
            raise ValueError("table only applies to kind='table'")

    # constructors

    @classmethod
    def lee_weight(cls, m, k):
        return cls(m, k, "lee_weight")

    @classmethod
    def lee_weight_dist(cls, m, k, threshold):
        return cls(m, k, "lee_weight_dist", threshold=threshold)

    @classmethod
    def from_table(cls, m, k, table):
        return cls(m, k, "table", table=tuple(table))

    @classmethod
    def from_callable(cls, m, k, func):
        """Tabulate an arbitrary Python callable over Z_m^k."""
        if m**k > MAX_MESSAGES:
            raise CapacityError(f"Z_{m}^{k} is too large to tabulate")
        return cls.from_table(m, k, [func(tuple(u)) for u in vector_array(m, k).tolist()])

    @classmethod
    def from_dict(cls, doc, m=None, k=None):
        m = doc.get("m", m)
        k = doc.get("k", k)
        if m is None or k is None:
            raise ValueError("function spec needs m and k")
        kind = doc.get("kind", "table")
        if kind == "table":
            return cls.from_table(m, k, doc["table"])
        if kind == "lee_weight":
            return cls.lee_weight(m, k)
        if kind == "lee_weight_dist":
            return cls.lee_weight_dist(m, k, doc.get("threshold"))
        raise ValueError(f"unknown function kind {kind!r}")

    @classmethod
    def load(cls, path, m=None, k=None):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh), m=m, k=k)

    def to_dict(self):
        doc = {"m": self.m, "k": self.k, "kind": self.kind}
        if self.kind == "table":
            doc["table"] = [self.labels[c] for c in self.table]
        if self.kind == "lee_weight_dist":
            doc["threshold"] = self.threshold
        return doc

    # image

    @property
    def max_weight(self):
        return self.k * (self.m // 2)

    @property
    def eta(self):
        """Size of the image."""
        if self.kind == "lee_weight":
            return self.max_weight + 1
        if self.kind == "lee_weight_dist":
            return self.max_weight // self.threshold + 1
        return len(self.labels)

    @property
    def image(self):
        return range(self.eta)

    @property
    def n_messages(self):
        return self.m**self.k

    def evaluate(self, u):
        u = check_vector(u, self.m, self.k)
        if self.kind == "table":
            return self.table[vector_index(u, self.m)]
        w = sum(lee_weight(x, self.m) for x in u)
        if self.kind == "lee_weight":
            return w
        return w // self.threshold

    __call__ = evaluate

    @cached_property
    def values(self):
        """Labels of all messages in lexicographic order, as a numpy array."""
        if self.n_messages > MAX_MESSAGES:
            raise CapacityError(f"Z_{self.m}^{self.k} is too large to tabulate")
        if self.kind == "table":
            return np.asarray(self.table, dtype=np.int64)
        vecs = vector_array(self.m, self.k)
        w = np.minimum(vecs, self.m - vecs).sum(axis=1)
        if self.kind == "lee_weight":
            return w
        return w // self.threshold

    def is_constant(self):
        return self.eta == 1


@dataclass(frozen=True)
class FunctionBall:
    center: tuple
    radius: int
    values: frozenset


def _check_label(f, e):
    if not 0 <= e < f.eta:
        raise ValueError(f"label {e} is not in the image (eta={f.eta})")


def image_distances(f, budget=DEFAULT_PAIR_BUDGET):
    """The eta x eta matrix of Lee distances between function values.

    Closed forms are used for the Lee weight function (``|i-j|``) and for the
    Lee weight distribution function; table functions are paired exhaustively.
    """
    eta = f.eta
    idx = np.arange(eta)
    gap = np.abs(idx[:, None] - idx[None, :])
    if f.kind == "lee_weight":
        return gap
    if f.kind == "lee_weight_dist":
        # nearest weights of two classes i < j are (i+1)T - 1 and jT
        return np.where(gap == 0, 0, f.threshold * (gap - 1) + 1)
    n = f.n_messages
    if n * n > budget:
        raise CapacityError(f"{n * n} pair evaluations exceed the budget of {budget}")
    vecs = vector_array(f.m, f.k)
    labels = f.values
    out = np.zeros((eta, eta), dtype=np.int64)
    # rowmin[a, v] = distance from v to the nearest message labelled a
    rowmin = np.empty((eta, n), dtype=np.int64)
    chunk = max(1, 2**22 // max(n, 1))
    for a in range(eta):
        members = vecs[labels == a]
        best = np.full(n, np.iinfo(np.int64).max)
        for s in range(0, len(members), chunk):
            d = distance_matrix(members[s:s + chunk], vecs, f.m)
            best = np.minimum(best, d.min(axis=0))
        rowmin[a] = best
    for a in range(eta):
        for b in range(a + 1, eta):
            out[a, b] = out[b, a] = rowmin[a][labels == b].min()
    return out


def function_distance(f, ei, ej, budget=DEFAULT_PAIR_BUDGET):
    """Least Lee distance between a preimage of ``ei`` and a preimage of ``ej``."""
    _check_label(f, ei)
    _check_label(f, ej)
    if ei == ej:
        return 0
    if f.kind in ("lee_weight", "lee_weight_dist"):
        return int(image_distances(f)[ei, ej])
    return int(image_distances(f, budget)[ei, ej])


def function_ball(f, u, rho):
    u = check_vector(u, f.m, f.k)
    if rho < 0:
        raise ValueError("radius must be nonnegative")
    values = frozenset(f.evaluate(v) for v in enumerate_ball(u, rho, f.m))
    return FunctionBall(u, rho, values)


def ball_offsets(m, n, rho):
    """Offsets of the Lee ball around zero as an array, lexicographic order."""
    return np.asarray(enumerate_ball((0,) * n, rho, m), dtype=np.int64).reshape(-1, n)


def neighbour_table(m, n, rho):
    """``table[u, s]`` = index of ``u + offset_s`` for every message ``u``."""
    vecs = vector_array(m, n)
    offs = ball_offsets(m, n, rho)
    weights = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    shifted = (vecs[:, None, :] + offs[None, :, :]) % m
    return shifted @ weights


def locality_lambda(f, rho, budget=DEFAULT_PAIR_BUDGET):
    """Exact largest function-ball size over all centres.

    This is the least ``lam`` for which ``f`` is a locally (lam, rho) function.
    """
    if rho < 0:
        raise ValueError("radius must be nonnegative")
    n = f.n_messages
    if n * ball_volume(f.k, rho, f.m) > budget:
        raise CapacityError("locality scan exceeds the evaluation budget")
    nb = neighbour_table(f.m, f.k, rho)
    lab = np.sort(f.values[nb], axis=1)
    distinct = 1 + (np.diff(lab, axis=1) != 0).sum(axis=1)
    return int(distinct.max())


def lemma_ij_representative(m, k, i):
    """A message of Lee weight ``i`` from the nested block family.

    The first ``a-1`` coordinates are filled with ``m//2``, coordinate ``a``
    carries the remainder, the rest are zero.  Any two members ``u_i, u_j`` of
    the family are at Lee distance exactly ``|i - j|``.
    """
    h = half_modulus(m)
    if not 0 <= i <= k * h:
        raise ValueError(f"weight {i} outside 0..{k * h}")
    if i == 0:
        return (0,) * k
    a = -(-i // h)  # (a-1)h < i <= ah
    return (h,) * (a - 1) + (i - (a - 1) * h,) + (0,) * (k - a)
