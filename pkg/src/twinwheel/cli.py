"""``twinwheel`` command line: reference tables, generation, distribution and bounds."""
import argparse
import contextlib
import itertools
import logging
import sys

from . import tables
from .bounds import find_twin_above, growth_check, twin_lower_bound
from .distribution import subset_stats
from .errors import RangeError
from .limits import DEFAULT_ENUM_CAP, DEFAULT_SIEVE_CEILING
from .oracle import PrimeSieve
from .output import DEFAULT_PRECISION, MAX_PRECISION, OutputRecord
from .propagation import (
    SEED_LEVEL,
    SEED_TWIN,
    TwinPair,
    enumerate_prospective_primes,
    enumerate_prospective_twins,
    family_tree,
    generation_array,
)
from .wheel import (
    counts,
    interval_adjusted_density,
    make_level,
    n_prospective_primes,
    n_prospective_twins,
    prime_fraction_estimate,
    ratio_step_approx,
)

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_RANGE = 0, 1, 2, 3

_GLOBAL_DEFAULTS = {
    "format": "csv",
    "cache_dir": None,
    "sieve_ceiling": DEFAULT_SIEVE_CEILING,
    "enum_cap": DEFAULT_ENUM_CAP,
    "precision": DEFAULT_PRECISION,
}


def _precision(text):
    value = int(text)
    if not 1 <= value <= MAX_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be 1..{MAX_PRECISION}")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _global_flags(with_format=True):
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    if with_format:
        p.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    p.add_argument("--cache-dir", default=argparse.SUPPRESS, help="directory for pi checkpoints")
    p.add_argument("--sieve-ceiling", type=_positive, default=argparse.SUPPRESS)
    p.add_argument("--enum-cap", type=_positive, default=argparse.SUPPRESS)
    p.add_argument("--precision", type=_precision, default=argparse.SUPPRESS,
                   help="significant digits for non-integer cells")
    return p


def build_parser():
    full, bare = _global_flags(), _global_flags(with_format=False)
    parser = argparse.ArgumentParser(prog="twinwheel", parents=[full], description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[full], help="rebuild a reference table with agreement flags")
    p.add_argument("--id", dest="table_id", required=True, choices=tables.TABLE_IDS)
    p.add_argument("--slow", action="store_true", help="include the minutes-scale rows")

    for name in ("counts", "densities"):
        p = sub.add_parser(name, parents=[full])
        p.add_argument("--k", type=_positive, required=True)

    p = sub.add_parser("generate", parents=[full], help="list prospective primes or twins of a level")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--twins", action="store_true")
    p.add_argument("--limit", type=_positive)
    p.add_argument("--mark-composites", action="store_true", help="suffix composites with '*'")
    p.add_argument("--array", action="store_true", help="one row per parent with a cell per multiplier")

    p = sub.add_parser("tree", parents=[bare], help="twin family tree from (5,7)")
    p.add_argument("--to-k", type=_positive, required=True)
    p.add_argument("--format", dest="tree_format", choices=("text", "dot"), default="text")

    p = sub.add_parser("distribution", parents=[full], help="per-subset counts against the minima")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--per-subset", action="store_true")

    p = sub.add_parser("bounds", parents=[full], help="twin lower bound for one level")
    p.add_argument("--l", type=_positive, required=True)

    p = sub.add_parser("find-twin-above", parents=[full])
    p.add_argument("--n", type=int, required=True)
    return parser


def _sieve(args):
    return PrimeSieve(ceiling=args.sieve_ceiling, cache_dir=args.cache_dir)


def _mark(value, is_prime):
    return str(value) if is_prime else f"{value}*"


def cmd_table(args):
    oracle = _sieve(args) if args.table_id in ("1", "bounds") else None
    rows, provenance = tables.build(args.table_id, oracle, slow=args.slow)
    return OutputRecord(f"table --id {args.table_id}", rows, provenance)


def cmd_counts(args):
    level = make_level(args.k)
    row = {
        "k": level.k,
        "p_k": level.largest_prime,
        "primorial": level.primorial,
        "span_end": level.span_end,
        "n_pp": n_prospective_primes(level.k),
        "n_twin": n_prospective_twins(level.k),
    }
    return OutputRecord("counts", [row])


def cmd_densities(args):
    level = make_level(args.k)
    c = counts(level)
    row = {
        "k": level.k,
        "rho_pp": c.rho_pp,
        "rho_twin": c.rho_twin,
        "sigma_twin": c.sigma_twin,
        "zeta_partial": c.zeta_partial,
        "rho_pp_interval": interval_adjusted_density(level),
        "rho_twin_interval": interval_adjusted_density(level, twins=True),
    }
    if level.k >= 2:
        row["alpha"], row["step_ratio"] = ratio_step_approx(level.k)
        row["prime_fraction_estimate"] = prime_fraction_estimate(level.k)
    return OutputRecord("densities", [row])


def cmd_generate(args):
    k = args.k
    cap = None if args.limit else args.enum_cap
    oracle = _sieve(args) if args.mark_composites else None
    if args.array:
        return _generate_array(args, oracle)
    rows = []
    if args.twins:
        pairs = itertools.islice(enumerate_prospective_twins(k, cap), args.limit)
        for t in pairs:
            row = {"low": t.low, "high": t.high, "seq_n": t.seq_n}
            if oracle is not None:
                lo_p, hi_p = oracle.is_prime(t.low), oracle.is_prime(t.high)
                row["display"] = f"({_mark(t.low, lo_p)},{_mark(t.high, hi_p)})"
                row["is_twin_prime"] = lo_p and hi_p
            rows.append(row)
    else:
        items = itertools.islice(enumerate_prospective_primes(k, cap, oracle), args.limit)
        for p in items:
            row = {"value": p.value, "seq_n": p.seq_n, "position": 1 if p.value % 6 == 5 else 3}
            if oracle is not None:
                row["display"] = _mark(p.value, p.is_prime)
                row["is_prime"] = p.is_prime
            rows.append(row)
    return OutputRecord("generate", rows)


def _generate_array(args, oracle):
    rows = []
    for r in generation_array(args.k, args.enum_cap)[: args.limit]:
        row = {"parent": r.parent, "class": r.cls.value}
        for m, v in enumerate(r.cells):
            if v is None:
                row[f"m{m}"] = "-"
            elif oracle is not None:
                row[f"m{m}"] = _mark(v, oracle.is_prime(v))
            else:
                row[f"m{m}"] = v
        rows.append(row)
    return OutputRecord("generate --array", rows)


def cmd_tree(args):
    if args.to_k < SEED_LEVEL:
        raise ValueError(f"--to-k must be at least {SEED_LEVEL}")
    root = family_tree(TwinPair(SEED_TWIN, SEED_LEVEL), args.to_k, args.enum_cap)

    def label(node):
        return f"({node.pair.low},{node.pair.high})@{node.pair.level}"

    if args.tree_format == "text":
        return "".join("  " * depth + label(node) + "\n" for depth, node in root.walk())
    lines = ["digraph twin_family {"]
    for _, node in root.walk():
        nid = f"n{node.pair.low}_{node.pair.level}"
        lines.append(f'  {nid} [label="{label(node)}"];')
        for child in node.children:
            lines.append(f"  {nid} -> n{child.pair.low}_{child.pair.level};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_distribution(args):
    s = subset_stats(args.k, args.enum_cap)
    if args.per_subset:
        rows = [
            {
                "k": s.k,
                "m": m,
                "count_pp": s.counts_pp[m],
                "count_twin": s.counts_twin[m],
                "pp_pass": s.pp_pass[m],
                "twin_pass": s.twin_pass[m],
            }
            for m in range(len(s.counts_pp))
        ]
    else:
        rows = [{
            "k": s.k,
            "subsets": len(s.counts_pp),
            "min_pp_bound": s.min_pp_bound,
            "observed_min_pp": s.observed_min_pp,
            "pp_holds": s.pp_holds,
            "min_twin_bound": s.min_twin_bound,
            "observed_min_twin": s.observed_min_twin,
            "twin_holds": s.twin_holds,
        }]
    return OutputRecord("distribution", rows)


def cmd_bounds(args):
    r = twin_lower_bound(args.l, _sieve(args))
    g = growth_check(args.l)
    row = {
        "l": r.l,
        "k": r.k,
        "p_k": r.p_k,
        "p_next": r.p_k1,
        "bound_floor": r.bound_floor,
        "actual": r.actual,
        "ratio": r.ratio,
        "holds": r.holds,
        "next_bound_floor": g.floor_after,
        "growth_factor": g.growth_factor,
        "bracket_estimate": g.bracket_estimate,
        "grows": g.passes,
    }
    return OutputRecord("bounds", [row])


def cmd_find_twin_above(args):
    if args.n < 0:
        raise ValueError("--n must be non-negative")
    found = find_twin_above(args.n, _sieve(args))
    r = found.report
    lo, hi = found.witness if found.witness else (None, None)
    row = {
        "n": found.n,
        "l": r.l,
        "k": r.k,
        "p_k": r.p_k,
        "p_next": r.p_k1,
        "bound_floor": r.bound_floor,
        "actual": r.actual,
        "witness_low": lo,
        "witness_high": hi,
    }
    return OutputRecord("find-twin-above", [row])


COMMANDS = {
    "table": cmd_table,
    "counts": cmd_counts,
    "densities": cmd_densities,
    "generate": cmd_generate,
    "tree": cmd_tree,
    "distribution": cmd_distribution,
    "bounds": cmd_bounds,
    "find-twin-above": cmd_find_twin_above,
}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        result = COMMANDS[args.command](args)
    except RangeError as exc:
        print(f"twinwheel: {exc}", file=stderr)
        return EXIT_RANGE
    except ValueError as exc:
        print(f"twinwheel: {exc}", file=stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"twinwheel: internal check failed: {exc}", file=stderr)
        return EXIT_INTERNAL
    if isinstance(result, OutputRecord):
        result = result.render(args.format, args.precision)
    stdout.write(result)
    return EXIT_OK


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())
