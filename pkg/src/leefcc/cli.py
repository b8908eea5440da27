"""Command-line front end.

Exit codes: 0 ok, 2 invalid configuration, 3 budget exhausted, 4 verification
failure.  Budget and timeout defaults can be overridden with the
``LEEFCC_BUDGET`` and ``LEEFCC_TIMEOUT`` environment variables.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import codec, search
from .errors import BudgetExhausted, CapacityError, LeeFCCError, VerificationError
from .functions import FunctionSpec, locality_lambda
from .lee import all_vectors
from .matrices import (DistanceMatrix, constant_matrix, image_matrix,
                       lee_weight_matrix, message_matrix)

SCHEMA = 1
EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class ConfigError(Exception):
    pass


def _num(v):
    if isinstance(v, Fraction):
        return float(v)
    return v


def _entry(name, value, provenance):
    out = {"name": name, "value": _num(value), "provenance": provenance}
    if isinstance(value, Fraction):
        out["rational"] = str(value)
    return out


def _emit(args, doc=None, text=None):
    if text is None:
        text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise ConfigError(f"--{n} is required for '{args.command}'")


def _validate(args):
    if getattr(args, "m", None) is not None and args.m < 2:
        raise ConfigError("--m must be >= 2")
    if getattr(args, "k", None) is not None and args.k < 0:
        raise ConfigError("--k must be >= 0")
    if getattr(args, "t", None) is not None and args.t < 1:
        raise ConfigError("--t must be >= 1")
    if args.budget is not None and args.budget < 1:
        raise ConfigError("--budget must be positive")


def _function(args):
    src = args.function
    if src is None:
        raise ConfigError("--function is required")
    if src == "lee_weight":
        _require(args, "m", "k")
        return FunctionSpec.lee_weight(args.m, args.k)
    if src == "lee_weight_dist":
        _require(args, "m", "k", "T")
        return FunctionSpec.lee_weight_dist(args.m, args.k, args.T)
    if not os.path.exists(src):
        raise ConfigError(f"function spec file {src!r} not found")
    doc = json.load(open(src, encoding="utf-8"))
    if doc.get("kind") == "lee_weight_dist" and "threshold" not in doc and args.T:
        doc["threshold"] = args.T
    return FunctionSpec.from_dict(doc, m=args.m, k=args.k)


def _matrix_text(D, fmt):
    return D.to_csv() if fmt == "csv" else D.to_json() + "\n"


# subcommands

def cmd_bounds(args):
    _require(args, "m", "t")
    if args.function is None and args.eta is None:
        raise ConfigError("--function (or --eta) is required for 'bounds'")
    exhausted = False
    if args.function is None:
        eta, t, m = args.eta, args.t, args.m
        if eta < 1:
            raise ConfigError("--eta must be >= 1")
        D = constant_matrix(eta, 2 * t)
        values = [_entry("plotkin", search.plotkin_lower_bound(D, m), "plotkin"),
                  _entry("averaging", search.averaging_lower_bound(D, m), "plotkin"),
                  _entry("gv", search.gv_upper_bound(D, m), "gv")]
        if eta == 2:
            values.append(_entry("nl_two_2t", search.nl_two_2t(m, t), "closed-form"))
        try:
            res = search.exact_min_length(D, m, args.budget, timeout=args.timeout)
            values.append(_entry("exact", res.length, "exact"))
            lower = upper = res.length
        except BudgetExhausted as exc:
            exhausted = True
            lower, upper = exc.lower, exc.upper
        doc = {"schema": SCHEMA, "command": "bounds", "target": f"N_L({eta},{2 * t})",
               "m": m, "t": t, "eta": eta, "values": values, "lower": lower, "upper": upper}
    else:
        f = _function(args)
        rep = codec.redundancy_bounds(f, args.t, args.budget, timeout=args.timeout)
        values = []
        for name, (value, prov) in rep.values.items():
            if isinstance(value, tuple):
                values.append({"name": name, "value": None, "provenance": prov,
                               "bracket": [int(value[0]), int(value[1])]})
            else:
                values.append(_entry(name, value, prov))
            if name != "nl_two_2t" and name.startswith("nl_") and prov == "gv":
                exhausted = True
        if f.kind == "lee_weight":
            D = lee_weight_matrix(f.k, args.t, f.m)
            values.append(_entry("plotkin_image", search.plotkin_lower_bound(D, f.m), "plotkin"))
            values.append(_entry("averaging_image", search.averaging_lower_bound(D, f.m), "plotkin"))
            values.append(_entry("gv_image", search.gv_upper_bound(D, f.m), "gv"))
        doc = {"schema": SCHEMA, "command": "bounds", "target": "r_f",
               "function": f.to_dict(), "t": args.t, "values": values,
               "lower": rep.lower, "upper": rep.upper}
    _emit(args, doc)
    return EXIT_BUDGET if exhausted else EXIT_OK


def _load_messages(path, m, k):
    text = open(path, encoding="utf-8").read()
    if text.lstrip().startswith("["):
        rows = json.loads(text)
    else:
        rows = [[int(x) for x in row] for row in csv.reader(io.StringIO(text)) if row]
    return [tuple(r) for r in rows]


def cmd_matrix(args):
    _require(args, "t")
    kind = args.kind
    if kind == "lee-weight":
        _require(args, "m", "k")
        D = lee_weight_matrix(args.k, args.t, args.m)
    else:
        if args.spec:
            args.function = args.spec
        f = _function(args)
        if kind == "image":
            D = image_matrix(f, args.t)
        else:
            if args.messages:
                msgs = _load_messages(args.messages, f.m, f.k)
                if len(set(msgs)) != len(msgs):
                    raise ConfigError("duplicate messages in message list")
            else:
                msgs = all_vectors(f.m, f.k)
            D = message_matrix(f, args.t, msgs)
    _emit(args, text=_matrix_text(D, args.format))
    return EXIT_OK


def cmd_search(args):
    _require(args, "matrix", "m")
    D = DistanceMatrix.load(args.matrix)
    doc = {"schema": SCHEMA, "order": D.order, "m": args.m, "metric": args.metric}
    if args.metric == "lee":
        p = search.plotkin_lower_bound(D, args.m)
        doc["plotkin"] = float(p)
        doc["plotkin_rational"] = str(p)
        a = search.averaging_lower_bound(D, args.m)
        doc["averaging"] = float(a)
        doc["averaging_rational"] = str(a)
    doc["gv"] = search.gv_upper_bound(D, args.m, args.metric)
    try:
        res = search.exact_min_length(D, args.m, args.budget, args.metric,
                                      workers=args.workers, timeout=args.timeout)
    except BudgetExhausted as exc:
        doc.update(exact=None, bracket=[exc.lower, exc.upper], witness=None)
        _emit(args, doc)
        return EXIT_BUDGET
    doc.update(exact=res.length, witness=res.code.to_dict(), nodes=res.nodes)
    _emit(args, doc)
    return EXIT_OK


def cmd_construct(args):
    _require(args, "t")
    f = _function(args)
    t = args.t
    if args.method == "optimal":
        enc = codec.optimal_encoder(f, t, args.budget, timeout=args.timeout)
    elif args.method == "image":
        if f.eta == 1:
            code = [()]
        else:
            code = search.exact_min_length(image_matrix(f, t), f.m, args.budget,
                                           timeout=args.timeout).code
        enc = codec.build_image_encoder(f, t, code)
    else:
        col = codec.tau_coloring(f, 2 * t)
        if col.n_colors == 1:
            code = [()]
        else:
            code = search.exact_min_length(constant_matrix(col.n_colors, 2 * t), f.m,
                                           args.budget, timeout=args.timeout).code
        enc = codec.build_local_encoder(f, t, col, code)
    _emit(args, text=enc.to_json() + "\n")
    return EXIT_OK


def cmd_verify(args):
    _require(args, "encoder")
    enc = codec.FcEncoder.load(args.encoder)
    verdict = codec.verify_fclmc(enc)
    doc = {"schema": SCHEMA, "certified": verdict.certified, "r": enc.r, "t": enc.t}
    if not verdict:
        u, v, d = verdict.counterexample
        doc["counterexample"] = {"u": list(u), "v": list(v), "distance": d,
                                 "required": 2 * enc.t + 1}
    _emit(args, doc)
    return EXIT_OK if verdict else EXIT_VERIFY


def cmd_simulate(args):
    _require(args, "encoder")
    enc = codec.FcEncoder.load(args.encoder)
    verdict = codec.verify_fclmc(enc)
    if not verdict:
        sys.stderr.write(f"encoder not certified: {verdict.counterexample}\n")
        return EXIT_VERIFY
    rows = codec.simulate(enc, args.trials, args.seed)
    _emit(args, text=codec.simulation_csv(rows))
    return EXIT_OK


def _int_range(text):
    lo, _, hi = text.partition("..")
    return range(int(lo), int(hi or lo) + 1)


def cmd_table(args):
    rows = []
    ts = _int_range(args.t_range)
    if args.sweep == "mt":
        header = ["m", "t", "nl_two_2t:closed-form", "nl_two_2t:exact", "plotkin",
                  "averaging:plotkin", "gv"]
        for m in _int_range(args.m_range):
            for t in ts:
                D = constant_matrix(2, 2 * t)
                try:
                    exact = search.exact_min_length(D, m, args.budget).length
                except BudgetExhausted:
                    exact = ""
                rows.append([m, t, search.nl_two_2t(m, t), exact,
                             str(search.plotkin_lower_bound(D, m)),
                             str(search.averaging_lower_bound(D, m)), search.gv_upper_bound(D, m)])
    else:
        _require(args, "m")
        m = args.m
        header = ["k", "t", "nl_two_2t:closed-form", "cubic_lower:plotkin",
                  "plotkin", "averaging:plotkin", "r_f:exact", "gv", "lambda:exact"]
        for k in _int_range(args.k_range):
            for t in ts:
                D = lee_weight_matrix(k, t, m)
                try:
                    exact = search.exact_min_length(D, m, args.budget, timeout=args.timeout).length
                except BudgetExhausted:
                    exact = ""
                f = FunctionSpec.lee_weight(m, k)
                try:
                    lam = locality_lambda(f, 2 * t)
                except CapacityError:
                    lam = ""
                cubic = codec.cubic_lower_bound(t, m) if k > math.ceil((t + 1) / (m // 2)) else ""
                rows.append([k, t, search.nl_two_2t(m, t), str(cubic),
                             str(search.plotkin_lower_bound(D, m)),
                             str(search.averaging_lower_bound(D, m)), exact,
                             search.gv_upper_bound(D, m), lam])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(args, text=buf.getvalue())
    return EXIT_OK


def _env_int(name, default):
    val = os.environ.get(name)
    return int(val) if val else default


def _env_float(name):
    val = os.environ.get(name)
    return float(val) if val else None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--rho", type=int)
    common.add_argument("--T", type=int, help="threshold of the Lee weight distribution function")
    common.add_argument("--function", help="lee_weight, lee_weight_dist, or a JSON spec file")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--timeout", type=float, default=None, help="seconds")
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="leefcc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", parents=[common], help="bounds on the optimal redundancy")
    b.add_argument("--eta", type=int, help="bound N_L(eta, 2t) instead of a function")
    b.set_defaults(func=cmd_bounds)

    mx = sub.add_parser("matrix", parents=[common], help="emit a requirement matrix")
    mx.add_argument("--kind", choices=("lee-weight", "image", "message"), required=True)
    mx.add_argument("--spec", help="function spec file (alias of --function)")
    mx.add_argument("--messages", help="message list (JSON or CSV); default all of Z_m^k")
    mx.set_defaults(func=cmd_matrix, format="csv")

    s = sub.add_parser("search", parents=[common], help="exact shortest D-code")
    s.add_argument("--matrix", help="CSV or JSON requirement matrix")
    s.add_argument("--metric", choices=("lee", "hamming"), default="lee")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("construct", parents=[common], help="build a certified encoder")
    c.add_argument("--method", choices=("optimal", "image", "local"), default="optimal")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="certify an encoder file")
    v.add_argument("--encoder")
    v.set_defaults(func=cmd_verify)

    sm = sub.add_parser("simulate", parents=[common], help="Monte Carlo channel trials")
    sm.add_argument("--encoder")
    sm.add_argument("--trials", type=int, default=1000)
    sm.set_defaults(func=cmd_simulate, format="csv")

    tb = sub.add_parser("table", parents=[common], help="sweep bounds over a parameter grid")
    tb.add_argument("--sweep", choices=("mt", "kt"), default="mt")
    tb.add_argument("--m-range", default="2..8")
    tb.add_argument("--k-range", default="1..4")
    tb.add_argument("--t-range", default="1..3")
    tb.set_defaults(func=cmd_table, format="csv")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        args.budget = _env_int("LEEFCC_BUDGET", search.DEFAULT_NODE_BUDGET)
    if args.timeout is None:
        args.timeout = _env_float("LEEFCC_TIMEOUT")
    try:
        _validate(args)
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"leefcc {args.command}: {exc}\n")
        return EXIT_CONFIG
    except VerificationError as exc:
        sys.stderr.write(f"leefcc {args.command}: verification failed: {exc}\n")
        return EXIT_VERIFY
    except BudgetExhausted as exc:
        sys.stderr.write(f"leefcc {args.command}: {exc}; bracket [{exc.lower}, {exc.upper}]\n")
        return EXIT_BUDGET
    except (LeeFCCError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"leefcc {args.command}: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
