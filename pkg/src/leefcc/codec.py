"""Function-correcting encoders: construction, certification, bounds and a channel."""
import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (BudgetExhausted, CapacityError, DecodingFault,
                     DimensionError, UncorrectableError, VerificationError)
from .functions import (DEFAULT_PAIR_BUDGET, FunctionSpec, locality_lambda,
                        neighbour_table)
from .lee import (MAX_SPACE, check_vector, distance_matrix,
                  lee_weight, vector_array, vector_index)
from .matrices import constant_matrix, full_message_matrix, image_matrix
from .search import (DEFAULT_NODE_BUDGET, IrregularCode, exact_min_length,
                     gv_upper_bound, nl_two_2t)

SCHEMA = 1


@dataclass(eq=False)
class FcEncoder:
    """Systematic encoder ``u -> (u, p(u))``.

    ``p`` lists the redundancy vector of every message in lexicographic order.
    ``certified`` is only ever set by :func:`verify_fclmc`.
    """
    f: FunctionSpec
    t: int
    p: list
    r: int
    certified: bool = field(default=False)

    def __post_init__(self):
        if len(self.p) != self.f.n_messages:
            raise DimensionError(f"need {self.f.n_messages} redundancy vectors, got {len(self.p)}")
        self.p = [check_vector(x, self.f.m, self.r) for x in self.p]

    @property
    def m(self):
        return self.f.m

    @property
    def k(self):
        return self.f.k

    def redundancy(self, u):
        return self.p[vector_index(check_vector(u, self.m, self.k), self.m)]

    def encode(self, u):
        u = check_vector(u, self.m, self.k)
        return u + self.p[vector_index(u, self.m)]

    @cached_property
    def codewords(self):
        """All encodings as an ``(m**k, k + r)`` array, lexicographic message order."""
        red = np.asarray(self.p, dtype=np.int64).reshape(self.f.n_messages, self.r)
        return np.hstack([vector_array(self.m, self.k), red])

    def to_dict(self):
        return {"schema": SCHEMA, "m": self.m, "k": self.k, "t": self.t, "r": self.r,
                "function": self.f.to_dict(), "p": [list(x) for x in self.p]}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc):
        f = FunctionSpec.from_dict(doc["function"], m=doc["m"], k=doc["k"])
        if (f.m, f.k) != (doc["m"], doc["k"]):
            raise DimensionError("function spec does not match encoder parameters")
        return cls(f, int(doc["t"]), [tuple(x) for x in doc["p"]], int(doc["r"]))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())


@dataclass
class Verdict:
    certified: bool
    counterexample: tuple = None  # (u, v, achieved distance)

    def __bool__(self):
        return self.certified


def verify_fclmc(enc, budget=DEFAULT_PAIR_BUDGET):
    """Exhaustively check that differently-valued messages encode 2t+1 apart.

    Sets ``enc.certified`` and returns a :class:`Verdict`; the counterexample is
    the first violating pair ``(u, v, distance)`` in lexicographic order.
    """
    n = enc.f.n_messages
    if n * n > budget:
        raise CapacityError(f"{n * n} pair checks exceed the budget of {budget}")
    E = enc.codewords
    labels = enc.f.values
    need = 2 * enc.t + 1
    chunk = max(1, 2**20 // max(n, 1))
    for s in range(0, n, chunk):
        d = distance_matrix(E[s:s + chunk], E, enc.m)
        bad = (d < need) & (labels[s:s + chunk, None] != labels[None, :])
        # only pairs i < j
        bad &= np.arange(s, min(s + chunk, n))[:, None] < np.arange(n)[None, :]
        hits = np.argwhere(bad)
        if hits.size:
            i, j = hits[0]
            u, v = tuple(E[s + i, :enc.k].tolist()), tuple(E[j, :enc.k].tolist())
            enc.certified = False
            return Verdict(False, (u, v, int(d[i, j])))
    enc.certified = True
    return Verdict(True)


def _certified(enc):
    verdict = verify_fclmc(enc)
    if not verdict:
        raise VerificationError(f"encoder fails at {verdict.counterexample}",
                                witness=verdict.counterexample)
    return enc


def _full_order(f, msgs):
    """Map a list of messages covering Z_m^k onto lexicographic indices."""
    if msgs is None:
        return list(range(f.n_messages))
    order = [vector_index(check_vector(u, f.m, f.k), f.m) for u in msgs]
    if sorted(order) != list(range(f.n_messages)):
        raise ValueError("messages must enumerate all of Z_m^k exactly once")
    return order


def build_from_dcode(f, t, code, msgs=None):
    """Encoder with ``p(u_i) = C_i`` from a code for the full message matrix.

    ``msgs`` gives the message order of the code's rows (lexicographic when
    omitted).  The code is re-checked against the requirement matrix first.
    """
    order = _full_order(f, msgs)
    words = list(code.codewords) if isinstance(code, IrregularCode) else [tuple(c) for c in code]
    if len(words) != len(order):
        raise DimensionError(f"{len(words)} codewords for {len(order)} messages")
    r = len(words[0]) if words else 0
    p = [None] * len(order)
    for idx, w in zip(order, words):
        p[idx] = tuple(w)
    D = full_message_matrix(f, t) if f.n_messages > 1 else None
    if D is not None:
        IrregularCode(p, D, f.m).certify()
    return _certified(FcEncoder(f, t, p, r))


def build_image_encoder(f, t, code):
    """Encoder with ``p(u) = C_{f(u)}`` from a code for the image matrix."""
    words = list(code.codewords) if isinstance(code, IrregularCode) else [tuple(c) for c in code]
    if len(words) != f.eta:
        raise DimensionError(f"{len(words)} codewords for an image of size {f.eta}")
    if f.eta > 1:
        IrregularCode(words, image_matrix(f, t), f.m).certify()
    r = len(words[0]) if words else 0
    p = [tuple(words[int(e)]) for e in f.values]
    return _certified(FcEncoder(f, t, p, r))


@dataclass
class TauColoring:
    """Colours ``0..n_colors-1`` for every message (lexicographic order)."""
    colors: tuple
    n_colors: int
    rho: int
    lam: int = None  # exact locality of f at radius rho, when computed


def conflict_graph(f, rho):
    """Adjacency sets: ``u ~ v`` iff f(u) != f(v) and d(u, v) <= rho."""
    nb = neighbour_table(f.m, f.k, rho)
    lab = f.values
    adj = []
    for u in range(f.n_messages):
        row = nb[u]
        adj.append(set(row[lab[row] != lab[u]].tolist()))
    return adj


def _greedy_colors(adj):
    colors = []
    for u, nbrs in enumerate(adj):
        used = {colors[v] for v in nbrs if v < u}
        c = 0
        while c in used:
            c += 1
        colors.append(c)
    return colors


def _exact_colors(adj, upper):
    """Minimum colouring by DSATUR-ordered backtracking, below ``upper`` colours."""
    n = len(adj)
    best = None
    for k in range(1, upper):
        colors = [-1] * n

        def pick():
            best_u, best_key = -1, None
            for u in range(n):
                if colors[u] < 0:
                    sat = len({colors[v] for v in adj[u] if colors[v] >= 0})
                    key = (sat, len(adj[u]), -u)
                    if best_key is None or key > best_key:
                        best_u, best_key = u, key
            return best_u

        def rec(done, k=k):
            if done == n:
                return True
            u = pick()
            used = {colors[v] for v in adj[u] if colors[v] >= 0}
            top = max(colors) + 1
            for c in range(min(k, top + 1)):
                if c not in used:
                    colors[u] = c
                    if rec(done + 1):
                        return True
                    colors[u] = -1
            return False

        if rec(0):
            best = colors
            break
    return best


def tau_coloring(f, rho, budget=DEFAULT_PAIR_BUDGET):
    """Colour messages so no conflicting pair within distance ``rho`` shares a colour.

    Greedy in lexicographic order; if that uses more colours than the exact
    locality of ``f`` at ``rho``, an exact minimum colouring replaces it.
    """
    lam = locality_lambda(f, rho, budget)
    adj = conflict_graph(f, rho)
    colors = _greedy_colors(adj)
    n_colors = max(colors) + 1
    if n_colors > lam:
        exact = _exact_colors(adj, n_colors)
        if exact is not None:
            colors = exact
            n_colors = max(colors) + 1
    return TauColoring(tuple(colors), n_colors, rho, lam)


def check_coloring(f, coloring):
    """First monochromatic conflict edge ``(u, v)`` as message indices, else None."""
    adj = conflict_graph(f, coloring.rho)
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            if coloring.colors[u] == coloring.colors[v]:
                return u, v
    return None


def min_lee_distance(words, m):
    words = [tuple(w) for w in words]
    if len(words) < 2:
        return math.inf
    a = np.asarray(words, dtype=np.int64)
    d = distance_matrix(a, a, m)
    return int(d[~np.eye(len(words), dtype=bool)].min())


def build_local_encoder(f, t, coloring, code):
    """Encoder with ``p(u) = C_{colour(u)}`` from a colouring at radius 2t.

    ``code`` needs at least as many words as colours and minimum Lee
    distance ``2t``.
    """
    words = list(code.codewords) if isinstance(code, IrregularCode) else [tuple(c) for c in code]
    if coloring.n_colors > len(words):
        raise ValueError(f"{coloring.n_colors} colours but only {len(words)} codewords")
    if coloring.rho < 2 * t:
        raise ValueError("colouring radius must be at least 2t")
    if min_lee_distance(words, f.m) < 2 * t:
        raise VerificationError("code minimum Lee distance is below 2t")
    r = len(words[0]) if words else 0
    p = [tuple(words[c]) for c in coloring.colors]
    return _certified(FcEncoder(f, t, p, r))


def brute_force_optimal_redundancy(f, t, budget=DEFAULT_NODE_BUDGET, timeout=None):
    """Optimal redundancy as the exact shortest code for the full message matrix."""
    return optimal_encoder(f, t, budget, timeout).r


def optimal_encoder(f, t, budget=DEFAULT_NODE_BUDGET, timeout=None):
    """A certified encoder of optimal redundancy (exact search on the message matrix)."""
    if f.is_constant():
        return _certified(FcEncoder(f, t, [()] * f.n_messages, 0))
    res = exact_min_length(full_message_matrix(f, t), f.m, budget, timeout=timeout)
    return build_from_dcode(f, t, res.code)


def min_redundancy_by_encoder_search(f, t, max_r=None, budget=DEFAULT_NODE_BUDGET):
    """Smallest r admitting any systematic encoder, by direct search over p.

    Independent of the requirement-matrix route: messages are assigned
    redundancy vectors in lexicographic order and every pair with different
    function values is checked on the full encodings.
    """
    if f.is_constant():
        return 0
    m, n = f.m, f.n_messages
    msgs = vector_array(m, f.k).tolist()
    lab = f.values.tolist()
    need = 2 * t + 1

    def dist(a, b):
        return sum(lee_weight(x - y, m) for x, y in zip(a, b))

    base = [[dist(msgs[i], msgs[j]) for j in range(n)] for i in range(n)]
    nodes = 0
    r = 0
    while max_r is None or r <= max_r:
        cands = vector_array(m, r).tolist()
        pd = [[dist(a, b) for b in cands] for a in cands]
        assign = []

        def rec(i):
            nonlocal nodes
            if i == n:
                return True
            for c in range(len(cands)):
                nodes += 1
                if nodes > budget:
                    raise BudgetExhausted("encoder search budget exhausted", lower=r)
                if all(lab[i] == lab[j] or base[i][j] + pd[c][assign[j]] >= need
                       for j in range(i)):
                    assign.append(c)
                    if rec(i + 1):
                        return True
                    assign.pop()
            return False

        if rec(0):
            return r
        r += 1
    raise BudgetExhausted(f"no encoder up to redundancy {max_r}", lower=max_r + 1)


@dataclass
class RedundancyBounds:
    """Lower/upper bracket on the optimal redundancy with labelled ingredients.

    ``values`` maps a name to ``(value, provenance)`` where provenance is one of
    ``closed-form``, ``plotkin``, ``gv``, ``exact``.
    """
    lower: int
    upper: int
    values: dict

    def check(self):
        assert self.lower <= self.upper


def cubic_lower_bound(t, m):
    """Lee-weight-function lower bound ``(10t^3 + 30t^2 + 20t) / (3 (t+2)^2 (m//2))``.

    Sound for even m only: for m = 5, k = 2, t = 1 it evaluates to 10/9 while a
    single redundancy symbol suffices.
    """
    return Fraction(10 * t**3 + 30 * t**2 + 20 * t, 3 * (t + 2) ** 2 * (m // 2))


def _nl_constant(eta, d, m, budget, timeout):
    """N_L(eta, d) exactly when the search completes, else its GV value."""
    D = constant_matrix(eta, d)
    try:
        return exact_min_length(D, m, budget, timeout=timeout).length, "exact"
    except BudgetExhausted:
        return gv_upper_bound(D, m), "gv"


def redundancy_bounds(f, t, budget=DEFAULT_NODE_BUDGET, locality=True, timeout=None):
    """Bracket the optimal redundancy of ``f`` against ``t`` Lee errors."""
    m = f.m
    values = {}
    eta = f.eta
    if eta == 1:
        return RedundancyBounds(0, 0, {"constant": (0, "closed-form")})
    lower = nl_two_2t(m, t)
    values["nl_two_2t"] = (lower, "closed-form")
    h = m // 2
    if f.kind == "lee_weight" and f.k > -(-(t + 1) // h):
        cubic = cubic_lower_bound(t, m)
        values["cubic_lower"] = (cubic, "plotkin")
        # reported for every m but only a valid bound for even m
        if m % 2 == 0:
            lower = max(lower, math.ceil(cubic))
    nl_eta, prov = _nl_constant(eta, 2 * t, m, budget, timeout)
    values["nl_eta_2t"] = (nl_eta, prov)
    upper = nl_eta
    if locality:
        try:
            lam = locality_lambda(f, 2 * t)
        except CapacityError:
            lam = None
        if lam is not None:
            values["lambda"] = (lam, "exact")
            nl_lam, prov = _nl_constant(max(lam, 1), 2 * t, m, budget, timeout)
            values["nl_lambda_2t"] = (nl_lam, prov)
            upper = min(upper, nl_lam)
    try:
        Dimg = image_matrix(f, t)
    except CapacityError:
        Dimg = None
    if Dimg is not None:
        try:
            res = exact_min_length(Dimg, m, budget, timeout=timeout)
            values["nl_image"] = (res.length, "exact")
            upper = min(upper, res.length)
            if f.kind == "lee_weight":
                # image-level optimum is exact for the Lee weight function
                lower = max(lower, res.length)
        except BudgetExhausted as exc:
            values["nl_image"] = ((exc.lower, exc.upper), "gv")
            upper = min(upper, exc.upper)
            if f.kind == "lee_weight":
                lower = max(lower, exc.lower)
    return RedundancyBounds(lower, upper, values)


class LeeBallSampler:
    """Exact-uniform sampler over the Lee ball of radius ``t`` around zero in Z_m^n.

    ``count[i][w]`` holds the number of suffixes of length ``n - i`` with Lee
    weight at most ``w``; a uniform rank is unranked coordinate by coordinate.
    """

    def __init__(self, n, t, m):
        if t < 0:
            raise ValueError("radius must be nonnegative")
        self.n, self.t, self.m = n, t, m
        self.wt = [lee_weight(x, m) for x in range(m)]
        count = [[0] * (t + 1) for _ in range(n + 1)]
        count[n] = [1] * (t + 1)
        for i in range(n - 1, -1, -1):
            for w in range(t + 1):
                count[i][w] = sum(count[i + 1][w - s] for s in self.wt if s <= w)
        self.count = count
        self.size = count[0][t]
        if self.size > MAX_SPACE:
            raise CapacityError(f"Lee ball of size {self.size} exceeds the counting width")

    def unrank(self, idx):
        out = []
        left = self.t
        for i in range(self.n):
            for x in range(self.m):
                s = self.wt[x]
                if s > left:
                    continue
                c = self.count[i + 1][left - s]
                if idx < c:
                    out.append(x)
                    left -= s
                    break
                idx -= c
        return tuple(out)

    def sample(self, rng):
        return self.unrank(rng.randrange(self.size))


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def inject_errors(codeword, t, m, seed=None):
    """Add an error drawn uniformly from the Lee ball of radius ``t``."""
    codeword = check_vector(codeword, m)
    e = LeeBallSampler(len(codeword), t, m).sample(_rng(seed))
    return tuple((a + b) % m for a, b in zip(codeword, e))


def decode_function_value(received, enc):
    """Recover f(u) from a received word with at most ``t`` Lee errors."""
    if not enc.certified:
        raise ValueError("decoder requires a certified encoder")
    received = np.asarray(check_vector(received, enc.m, enc.k + enc.r), dtype=np.int64)
    diff = (enc.codewords - received) % enc.m
    d = np.minimum(diff, enc.m - diff).sum(axis=1)
    near = np.flatnonzero(d <= enc.t)
    if near.size == 0:
        raise UncorrectableError("no encoding within the correction radius")
    vals = np.unique(enc.f.values[near])
    if vals.size != 1:
        raise DecodingFault(f"ambiguous function values {vals.tolist()} within radius {enc.t}")
    return int(vals[0])


SIM_HEADER = ("trial", "errors_injected_weight", "recovered", "correct")


def simulate(enc, trials, seed=0):
    """Monte Carlo channel runs: random message, uniform ball error, decode."""
    rng = _rng(seed)
    n = enc.k + enc.r
    sampler = LeeBallSampler(n, enc.t, enc.m)
    rows = []
    for trial in range(trials):
        idx = rng.randrange(enc.f.n_messages)
        sent = tuple(enc.codewords[idx].tolist())
        e = sampler.sample(rng)
        received = tuple((a + b) % enc.m for a, b in zip(sent, e))
        got = decode_function_value(received, enc)
        want = int(enc.f.values[idx])
        rows.append((trial, sum(sampler.wt[x] for x in e), got, got == want))
    return rows


def simulation_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SIM_HEADER)
    for trial, wt, got, ok in rows:
        w.writerow((trial, wt, got, int(ok)))
    return buf.getvalue()
