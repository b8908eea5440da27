"""Shortest irregular-distance codes: exact search, greedy construction and bounds.

The exact search pins the first placed codeword to zero (Lee distance is
translation invariant) and restricts the second to a canonical
representative under coordinate permutations and per-coordinate negation.
Rows are placed most-constrained first; each unplaced row keeps a boolean
mask of codewords still compatible with everything placed so far.
"""
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (BudgetExhausted, CapacityError, ConstructionError,
                     VerificationError)
from .lee import (MAX_SPACE, ball_volume, check_modulus, hamming_ball_volume,
                  hamming_distance, lee_distance, vector_array)
from .matrices import DistanceMatrix

DEFAULT_NODE_BUDGET = 2_000_000
# largest Z_m^r the search and greedy scan will materialise
MAX_SEARCH_SPACE = 2**22


@dataclass
class IrregularCode:
    """Codewords (tuples over Z_m, common length) meant to satisfy ``matrix``."""
    codewords: list
    matrix: DistanceMatrix
    m: int
    metric: str = "lee"

    @property
    def length(self):
        return len(self.codewords[0]) if self.codewords else 0

    def distance(self, i, j):
        if self.metric == "hamming":
            return hamming_distance(self.codewords[i], self.codewords[j])
        return lee_distance(self.codewords[i], self.codewords[j], self.m)

    def first_violation(self):
        """First ``(i, j, achieved, required)`` with ``i < j`` that fails, else None."""
        M = self.matrix.order
        if len(self.codewords) != M:
            raise VerificationError(f"{len(self.codewords)} codewords for an order-{M} matrix")
        for j in range(M):
            for i in range(j):
                req = self.matrix[i, j]
                if req and self.distance(i, j) < req:
                    return i, j, self.distance(i, j), req
        return None

    def is_valid(self):
        return self.first_violation() is None

    def certify(self):
        bad = self.first_violation()
        if bad is not None:
            i, j, got, req = bad
            raise VerificationError(
                f"codewords {i} and {j} are at distance {got} < {req}", witness=bad)
        return self

    def to_dict(self):
        return [list(c) for c in self.codewords]


@dataclass
class SearchResult:
    length: int
    code: IrregularCode
    lower: int
    upper: int
    nodes: int


@dataclass
class BoundReport:
    plotkin_lower: Fraction
    gv_upper: int
    exact: int = None
    hamming_upper: float = None
    closed_form: int = None

    def check(self):
        if self.exact is not None:
            assert self.exact <= self.gv_upper


def _as_matrix(D):
    return D if isinstance(D, DistanceMatrix) else DistanceMatrix(D)


def _max_symbol_weight(m, metric):
    return 1 if metric == "hamming" else m // 2


def plotkin_lower_bound(D, m):
    """Averaging lower bound on N_L(D), as an exact rational.

    ``4 * sum_{i<j} D_ij / (M^2 * (m//2))`` for even M; ``M^2 - 1`` replaces
    ``M^2`` for odd M.  The derivation assumes a coordinate's distance sum
    peaks at two antipodal symbols, which only holds for even m; for odd m the
    value can exceed N_L(D) and :func:`averaging_lower_bound` should be used.
    """
    D = _as_matrix(D)
    m = check_modulus(m)
    M = D.order
    if M < 2:
        return Fraction(0)
    denom = (M * M if M % 2 == 0 else M * M - 1) * (m // 2)
    return Fraction(4 * D.upper_sum(), denom)


def column_distance_cap(M, m):
    """Upper bound on ``sum_{a,b} d(x_a, x_b)`` over M symbols of one coordinate.

    Even m: the Lee cycle embeds isometrically in the (m/2)-cube, giving
    ``2 (m//2) floor(M^2/4)``.  Odd m: the doubled cycle embeds in the m-cube
    and the uniform spread caps the concave quadratic form, giving
    ``min(m floor(M^2/4), floor(M^2 (m^2-1) / 4m))``.
    """
    if m % 2 == 0:
        return 2 * (m // 2) * (M * M // 4)
    return min(m * (M * M // 4), M * M * (m * m - 1) // (4 * m))


def averaging_lower_bound(D, m):
    """Lower bound on N_L(D) valid for every modulus.

    Twice the requirement sum divided by :func:`column_distance_cap`; equal to
    :func:`plotkin_lower_bound` when m is even.
    """
    D = _as_matrix(D)
    m = check_modulus(m)
    if D.order < 2:
        return Fraction(0)
    return Fraction(2 * D.upper_sum(), column_distance_cap(D.order, m))


def pair_lower_bound(D, m, metric="lee"):
    """Every single pair needs ``ceil(D_ij / max symbol weight)`` coordinates."""
    D = _as_matrix(D)
    if D.order < 2:
        return 0
    w = _max_symbol_weight(m, metric)
    return int(-(-int(D.entries.max()) // w))


def gv_upper_bound(D, m, metric="lee"):
    """Least r with ``m^r > max_j sum_{i<j} V(r, D_ij - 1)``.

    Rows are taken in the order given.  Zero requirements contribute the empty
    ball ``V(r, -1) = 0``.
    """
    D = _as_matrix(D)
    m = check_modulus(m)
    vol = hamming_ball_volume if metric == "hamming" else ball_volume
    upper = np.triu(D.entries, 1)
    cols = []
    for j in range(D.order):
        vals, counts = np.unique(upper[:j, j], return_counts=True)
        cols.append([(int(v), int(c)) for v, c in zip(vals, counts) if v > 0])
    r = 0
    while True:
        if m**r > MAX_SPACE:
            raise CapacityError(f"GV length search passed Z_{m}^{r - 1} without success")
        worst = max((sum(c * vol(r, v - 1, m) for v, c in col) for col in cols), default=0)
        if m**r > worst:
            return r
        r += 1


def _weight_table(m, metric):
    x = np.arange(m)
    if metric == "hamming":
        return (x != 0).astype(np.int16)
    return np.minimum(x, m - x).astype(np.int16)


def _check_space(m, r):
    if m**r > MAX_SEARCH_SPACE:
        raise CapacityError(f"Z_{m}^{r} exceeds the search space limit {MAX_SEARCH_SPACE}")


def greedy_construct(D, r, m, metric="lee"):
    """Sequentially pick the first lexicographic codeword clearing all earlier ones.

    Guaranteed to succeed whenever ``r >= gv_upper_bound(D, m)``; raises
    :class:`ConstructionError` naming the first position with no candidate.
    """
    D = _as_matrix(D)
    m = check_modulus(m)
    _check_space(m, r)
    vecs = vector_array(m, r)
    wt = _weight_table(m, metric)
    chosen = []
    for j in range(D.order):
        ok = np.ones(len(vecs), dtype=bool)
        for i in range(j):
            req = D[i, j]
            if req:
                ok &= wt[(vecs - vecs[chosen[i]]) % m].sum(axis=1) >= req
        hits = np.flatnonzero(ok)
        if hits.size == 0:
            raise ConstructionError(
                f"no admissible codeword for position {j + 1} at length {r}", index=j + 1)
        chosen.append(int(hits[0]))
    code = IrregularCode([tuple(vecs[c].tolist()) for c in chosen], D, m, metric)
    return code.certify()


class _Backtracker:
    """Depth-first search for a D-code of one fixed length."""

    def __init__(self, D, m, r, metric, budget, deadline=None):
        self.D = D.entries
        self.M = D.order
        self.m = m
        self.r = r
        self.vecs = vector_array(m, r)
        self.wt = _weight_table(m, metric)
        h = m // 2
        v = self.vecs
        self.canonical = (v <= h).all(axis=1) & (np.diff(v, axis=1) <= 0).all(axis=1)
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self._rows = {}

    def distances_from(self, idx):
        row = self._rows.get(idx)
        if row is None:
            row = self.wt[(self.vecs - self.vecs[idx]) % self.m].sum(axis=1)
            if len(self._rows) < 4096:
                self._rows[idx] = row
        return row

    def first_row(self):
        sums = self.D.sum(axis=1)
        return int(np.argmax(sums))

    def root(self):
        """Assignment and masks after pinning the first row to zero."""
        first = self.first_row()
        N = len(self.vecs)
        masks = {j: np.ones(N, dtype=bool) for j in range(self.M) if j != first}
        masks = self._propagate(first, 0, masks)
        return {first: 0}, masks

    def _propagate(self, row, c, masks):
        d = self.distances_from(c)
        new = {}
        for j, mk in masks.items():
            if j == row:
                continue
            req = self.D[row, j]
            if req > 0:
                mk = mk & (d >= req)
                if not mk.any():
                    return None
            new[j] = mk
        return new

    def second_choice(self, masks):
        return self._pick(masks)

    def _pick(self, masks):
        return min(masks, key=lambda j: (int(np.count_nonzero(masks[j])), j))

    def extend(self, assign, masks, restrict=None):
        if not masks:
            return dict(assign)
        rem = list(masks)
        if not self.D[np.ix_(rem, rem)].any():
            # no mutual requirements left: any surviving candidate works
            out = dict(assign)
            for j in rem:
                out[j] = int(np.flatnonzero(masks[j])[0])
            return out
        row = self._pick(masks)
        cands = np.flatnonzero(masks[row])
        if len(assign) == 1:
            cands = cands[self.canonical[cands]]
            if restrict is not None:
                cands = cands[np.isin(cands, restrict)]
        for c in cands:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhausted("node budget exhausted")
            if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
                raise BudgetExhausted("time budget exhausted")
            new = self._propagate(row, int(c), masks)
            if new is None:
                continue
            assign[row] = int(c)
            found = self.extend(assign, new)
            if found is not None:
                return found
            del assign[row]
        return None

    def code(self, assign, D, metric):
        words = [tuple(self.vecs[assign[i]].tolist()) for i in range(self.M)]
        return IrregularCode(words, D, self.m, metric)


def _chunk_task(args):
    D, m, r, metric, budget, deadline, chunk = args
    bt = _Backtracker(D, m, r, metric, budget, deadline)
    assign, masks = bt.root()
    try:
        found = bt.extend(assign, masks, restrict=chunk) if masks is not None else None
    except BudgetExhausted:
        return "exhausted", None, bt.nodes
    return ("found" if found else "none"), found, bt.nodes


def _second_level_candidates(bt):
    assign, masks = bt.root()
    if masks is None or not masks:
        return None
    row = bt._pick(masks)
    cands = np.flatnonzero(masks[row])
    return cands[bt.canonical[cands]]


def feasible_at(D, m, r, metric="lee", budget=DEFAULT_NODE_BUDGET, deadline=None, workers=1):
    """Search for a D-code of length exactly ``r``.

    Returns ``(code or None, nodes)``; raises :class:`BudgetExhausted` when the
    search cannot reach a verdict.
    """
    D = _as_matrix(D)
    _check_space(m, r)
    bt = _Backtracker(D, m, r, metric, budget, deadline)
    if workers > 1:
        cands = _second_level_candidates(bt)
        if cands is not None and len(cands) > 1:
            return _feasible_parallel(D, m, r, metric, budget, deadline, workers, cands)
    assign, masks = bt.root()
    if masks is None:
        return None, bt.nodes
    found = bt.extend(assign, masks)
    if found is None:
        return None, bt.nodes
    return bt.code(found, D, metric).certify(), bt.nodes


def _feasible_parallel(D, m, r, metric, budget, deadline, workers, cands):
    chunks = np.array_split(cands, min(len(cands), 4 * workers))
    tasks = [(D, m, r, metric, budget, deadline, ch) for ch in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_chunk_task, tasks))
    nodes = sum(n for _, _, n in results)
    for status, found, _ in results:
        if status == "found":
            bt = _Backtracker(D, m, r, metric, budget)
            return bt.code(found, D, metric).certify(), nodes
    if any(status == "exhausted" for status, _, _ in results):
        raise BudgetExhausted("node budget exhausted in a worker")
    return None, nodes


def exact_min_length(D, m, budget=DEFAULT_NODE_BUDGET, metric="lee", workers=1, timeout=None):
    """Exact shortest length of a D-code, with a witness.

    Lengths are tried upward from the best cheap lower bound; the GV length is
    covered by the greedy construction, which cannot fail there.  Raises
    :class:`BudgetExhausted` carrying the bracket ``[lower, upper]`` if the
    node budget (shared across lengths) or ``timeout`` seconds run out.
    """
    D = _as_matrix(D)
    m = check_modulus(m)
    if metric not in ("lee", "hamming"):
        raise ValueError(f"unknown metric {metric!r}")
    M = D.order
    if M <= 1 or not D.entries.any():
        words = [()] * M
        return SearchResult(0, IrregularCode(words, D, m, metric), 0, 0, 0)
    lower = pair_lower_bound(D, m, metric)
    if metric == "lee":
        lower = max(lower, math.ceil(averaging_lower_bound(D, m)))
    upper = gv_upper_bound(D, m, metric)
    deadline = None if timeout is None else time.monotonic() + timeout
    nodes = 0
    for r in range(lower, upper):
        try:
            code, used = feasible_at(D, m, r, metric, budget - nodes, deadline, workers)
        except BudgetExhausted as exc:
            raise BudgetExhausted(f"{exc} while testing length {r}", lower=r, upper=upper) from None
        nodes += used
        if code is not None:
            return SearchResult(r, code, lower, upper, nodes)
    code = greedy_construct(D, upper, m, metric)
    return SearchResult(upper, code, lower, upper, nodes)


def nl_two_2t(m, t):
    """Shortest length of two words at Lee distance ``2t``: ``ceil(2t / (m//2))``."""
    m = check_modulus(m)
    if t < 1:
        raise ValueError("t must be >= 1")
    return -(-2 * t // (m // 2))


def hamming_chain_bound(M, d):
    """Upper bound ``(2d - 2) / (1 - 2 sqrt(ln d / d))`` on N_H(M, d), hence on N_L(M, d).

    Only valid for ``d >= 10`` and ``M <= d**2``.  Natural logarithm.
    """
    if d < 10 or M > d * d or M < 1:
        raise ValueError(f"requires d >= 10 and 1 <= M <= d^2, got M={M}, d={d}")
    return (2 * d - 2) / (1 - 2 * math.sqrt(math.log(d) / d))


def bound_report(D, m, budget=DEFAULT_NODE_BUDGET, timeout=None):
    """Plotkin, GV, exact (when the budget allows) and closed-form values for D."""
    D = _as_matrix(D)
    rep = BoundReport(plotkin_lower_bound(D, m), gv_upper_bound(D, m))
    try:
        rep.exact = exact_min_length(D, m, budget, timeout=timeout).length
    except BudgetExhausted:
        pass
    if D.order >= 2 and D.is_constant():
        d = D[0, 1]
        if D.order == 2 and d % 2 == 0 and d > 0:
            rep.closed_form = nl_two_2t(m, d // 2)
        if d >= 10 and D.order <= d * d:
            rep.hamming_upper = hamming_chain_bound(D.order, d)
    return rep
