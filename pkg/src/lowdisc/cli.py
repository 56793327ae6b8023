"""Command-line surface.

Subcommands: gen, disc, series, bounds, search, padic-check, reproduce.
All randomized commands take an explicit --seed; identical command lines
with identical seeds produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import numpy as np

from . import bounds as B
from .discrepancy import (TaParams, extreme_disc_1d, scaled_series, scaled_series_values,
                          star_disc_1d, star_disc_exact, star_disc_oracle, star_disc_ta)
from .errors import ConfigError
from .fileio import (read_config, read_point_set, write_config, write_point_set,
                     write_series_csv)
from .manifests import load_manifest, reproduce
from .optimizer import (SearchBudget, greedy_search, hammersley_search,
                        inverse_star_search, search_1d)
from .padic import (ceil_log, crt_count_range, meijer_transfer_bound,
                    padic_discrepancy, relabel_sequence, verify_equidistribution)
from .rng import SplitMix64
from .sequences import (Permutation, PermPolynomial, ScrambleConfig, generate_point_set,
                        hammersley_lift, kritzinger_sequence, kronecker_sequence,
                        GOLDEN_RATIO)
from .optimizer import FIRST_PRIMES, random_permutation_zero_fixed


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v != ""]


def _build_points(args):
    if args.kind == "kronecker":
        return kronecker_sequence(GOLDEN_RATIO, args.n)
    if args.kind == "kritzinger":
        return kritzinger_sequence(args.n)
    if args.config is None:
        raise ConfigError("--config is required unless --kind kronecker/kritzinger")
    cfg = read_config(args.config)
    if args.hammersley:
        return hammersley_lift(cfg, args.n, args.convention or cfg.convention)
    return generate_point_set(cfg, args.n)


def cmd_gen(args) -> int:
    pts = _build_points(args)
    write_point_set(pts, args.out)
    print(f"wrote {len(pts)} points (d={pts.dim}) to {args.out}")
    return 0


def cmd_disc(args) -> int:
    pts = read_point_set(args.infile)
    if args.method == "exact":
        res = star_disc_exact(pts)
    elif args.method == "oracle":
        res = star_disc_oracle(pts)
    elif args.method == "1d":
        res = star_disc_1d(pts)
    elif args.method == "extreme-1d":
        res = extreme_disc_1d(pts)
    else:
        res = star_disc_ta(pts, TaParams(iterations=args.iterations,
                                         restarts=args.restarts, seed=args.seed))
    witness = " ".join(f"{x:.17g}" for x in res.witness.corner)
    side = "closed" if res.witness.closed else "open"
    print(f"{res.value:.17g} {res.method} {side} {witness}")
    return 0


def cmd_series(args) -> int:
    if args.kind == "config":
        cfg = read_config(args.config)
        rows = scaled_series(cfg, args.n_max)
    else:
        if args.kind == "kronecker":
            vals = kronecker_sequence(GOLDEN_RATIO, args.n_max).coords_1d
        else:
            vals = kritzinger_sequence(args.n_max).coords_1d
        rows = scaled_series_values(vals, args.n_max)
    write_series_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_bounds(args) -> int:
    name = args.bound
    if name == "vdc":
        row = ["vdc", args.base, args.n, B.vdc_star_bound(args.base, args.n)]
    elif name == "subsequence":
        row = ["subsequence", args.p, args.n, B.subsequence_extreme_bound(args.p, args.n)]
    elif name == "halton":
        primes = _int_list(args.primes)
        row = ["halton", args.primes, args.n, B.halton_extreme_bound(primes, args.n)]
    elif name == "atanassov":
        bases = _int_list(args.bases)
        val = B.atanassov_star_bound(bases, args.n, s=args.s, halved_even=args.halved_even)
        row = ["atanassov", args.bases, args.n, val]
    elif name == "bracketing":
        row = ["bracketing", args.d, args.eps, B.bracketing_bound(args.d, args.eps)]
    elif name == "pipeline":
        cp = B.cover_constant_pipeline(args.mu, args.d)
        row = ["pipeline", args.mu, args.d, cp.sigma, cp.zeta, cp.tau_mu, cp.c_mu,
               cp.c0, cp.c1, cp.c, cp.bracket_ok]
    elif name == "probability":
        prob, quant = B.probability_forms(args.c, args.d, args.q)
        row = ["probability", args.c, args.d, args.q, prob, quant]
    elif name == "sqrt":
        row = ["sqrt", args.c, args.d, args.n, B.sqrt_bound(args.c, args.d, args.n)]
    elif name == "crossover":
        fn = B.proof_bound(args.d, s=args.s, halved_even=args.halved_even)
        row = ["crossover", args.d, args.c, B.crossover_threshold(args.d, fn, args.c)]
    elif name == "jump":
        plan = B.jump_plan(args.n0, args.d0, args.d, args.c, args.mode)
        row = ["jump", args.n0, args.d0, args.d, args.c, args.mode,
               plan.n1, plan.alpha, plan.valid]
    else:
        raise ConfigError(f"unknown bound {name!r}")
    print(",".join(str(v) for v in row))
    return 0


def cmd_search(args) -> int:
    ta = TaParams(iterations=args.iterations, restarts=args.restarts, seed=args.seed)
    if args.hammersley:
        result = hammersley_search(args.n, seed=args.seed)
    elif args.dim == 1:
        result = search_1d(args.p, args.n, args.budget_shifts[0],
                           args.budget_perms[0], seed=args.seed)
    elif args.target is not None:
        budget = SearchBudget(tuple(args.budget_shifts), tuple(args.budget_perms),
                              args.seed)
        n, result = inverse_star_search(args.dim, args.target, budget,
                                        disc_method=args.method)
        print(f"minimal N = {n}")
    else:
        budget = SearchBudget(tuple(args.budget_shifts), tuple(args.budget_perms),
                              args.seed)
        result = greedy_search(FIRST_PRIMES[:args.dim], args.n, budget,
                               disc_method=args.method, ta_params=ta)
    for rec in result.trace:
        print(f"stage d={rec.dim + 1} p={rec.prime}: shift={rec.shift} "
              f"perm={rec.perm.mapping} value={rec.value:.6f} "
              f"exact={rec.is_exact} evals={rec.evaluations}")
    print(f"best value {result.value:.17g} (exact={result.is_exact}, "
          f"{result.evaluations} evaluations)")
    if args.out:
        write_config(result.config, args.out)
        print(f"wrote config to {args.out}")
    return 0


def cmd_padic_check(args) -> int:
    primes = _int_list(args.primes)
    n_list = _int_list(args.n_list)
    failures = 0

    def report(label: str, ok: bool):
        nonlocal failures
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'}  {label}")

    for p in primes:
        stream = SplitMix64(args.seed ^ p)
        perms = [random_permutation_zero_fixed(p, stream) for _ in range(args.perms)]
        for a in range(1, args.max_shift + 1):
            if math.gcd(a, p) != 1:
                continue
            poly = PermPolynomial.affine(a)
            for n in n_list:
                k_max = ceil_log(n, p) + 1
                ok_eq = all(verify_equidistribution(poly, perm, p, n, k_max)
                            for perm in perms)
                vals = [a * i for i in range(1, n + 1)]
                ok_disc = all(
                    padic_discrepancy(relabel_sequence(vals, p, perm), p).value
                    == Fraction(1, n)
                    for perm in perms)
                if not (ok_eq and ok_disc):
                    report(f"p={p} a={a} N={n}: equidistribution={ok_eq} "
                           f"padic=1/N={ok_disc}", False)
        report(f"p={p}: shifts 1..{args.max_shift}, N in {n_list}, "
               f"{args.perms} permutations", True)
    # Meijer transfer domination on a small sweep
    for p in primes[:3]:
        ok = True
        stream = SplitMix64(args.seed ^ (p * 77))
        perm = random_permutation_zero_fixed(p, stream)
        for n in (10, 100, 2000):
            from .sequences import scrambled_radical_inverse
            xs = [scrambled_radical_inverse(3 * i, p, perm) for i in range(1, n + 1)]
            bound = meijer_transfer_bound(1.0 / n, p)
            ok = ok and extreme_disc_1d(np.asarray(xs)).value <= bound
        report(f"meijer transfer dominates measured extreme discrepancy (p={p})", ok)
    print(f"{failures} failures")
    return 1 if failures else 0


def cmd_reproduce(args) -> int:
    status = 0
    for name in args.tables:
        rep = reproduce(load_manifest(name), include_long=args.include_long)
        print("\n".join(rep.lines()))
        if not rep.ok:
            status = 1
    return status


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="lowdisc",
                                 description="scrambled low-discrepancy point sets, "
                                             "exact star-discrepancy, bound calculators")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a point set file")
    g.add_argument("--config", help="ScrambleConfig JSON file")
    g.add_argument("--kind", choices=["config", "kronecker", "kritzinger"],
                   default="config")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--hammersley", action="store_true",
                   help="lift the (d-1)-dim config by an equispaced coordinate")
    g.add_argument("--convention", choices=["paper", "classic", "classic1"])
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("disc", help="compute discrepancy of a point-set file")
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--method", choices=["exact", "oracle", "1d", "extreme-1d", "ta"],
                   default="exact")
    d.add_argument("--seed", type=int, default=20240)
    d.add_argument("--iterations", type=int, default=30000)
    d.add_argument("--restarts", type=int, default=4)
    d.set_defaults(func=cmd_disc)

    s = sub.add_parser("series", help="emit CSV of n * D*_n / log n over prefixes")
    s.add_argument("--config")
    s.add_argument("--kind", choices=["config", "kronecker", "kritzinger"],
                   default="config")
    s.add_argument("--n-max", dest="n_max", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_series)

    b = sub.add_parser("bounds", help="evaluate closed-form bounds (CSV row)")
    bsub = b.add_subparsers(dest="bound", required=True)
    bv = bsub.add_parser("vdc")
    bv.add_argument("--base", type=int, required=True)
    bv.add_argument("--n", type=int, required=True)
    bs = bsub.add_parser("subsequence")
    bs.add_argument("--p", type=int, required=True)
    bs.add_argument("--n", type=int, required=True)
    bh = bsub.add_parser("halton")
    bh.add_argument("--primes", required=True, help="comma separated")
    bh.add_argument("--n", type=int, required=True)
    ba = bsub.add_parser("atanassov")
    ba.add_argument("--bases", required=True)
    ba.add_argument("--n", type=int, required=True)
    ba.add_argument("--s", type=float, default=None)
    ba.add_argument("--halved-even", action="store_true")
    bb = bsub.add_parser("bracketing")
    bb.add_argument("--d", type=int, required=True)
    bb.add_argument("--eps", type=float, required=True)
    bp = bsub.add_parser("pipeline")
    bp.add_argument("--mu", type=int, default=13)
    bp.add_argument("--d", type=int, required=True)
    bq = bsub.add_parser("probability")
    bq.add_argument("--c", type=float, default=B.C_STAR)
    bq.add_argument("--d", type=int, required=True)
    bq.add_argument("--q", type=float, required=True)
    bsq = bsub.add_parser("sqrt")
    bsq.add_argument("--c", type=float, default=B.C_STAR)
    bsq.add_argument("--d", type=int, required=True)
    bsq.add_argument("--n", type=int, required=True)
    bc = bsub.add_parser("crossover")
    bc.add_argument("--d", type=int, required=True)
    bc.add_argument("--c", type=float, default=2.463)
    bc.add_argument("--s", type=float, default=None)
    bc.add_argument("--halved-even", action="store_true")
    bj = bsub.add_parser("jump")
    bj.add_argument("--n0", type=int, required=True)
    bj.add_argument("--d0", type=float, required=True)
    bj.add_argument("--d", type=int, required=True)
    bj.add_argument("--c", type=float, default=2.463)
    bj.add_argument("--mode", choices=["sequence", "pointset"], default="sequence")
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("search", help="greedy shift/permutation search")
    r.add_argument("--dim", type=int, default=1)
    r.add_argument("--p", type=int, default=2, help="prime for --dim 1")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--target", type=float, default=None,
                   help="inverse search: minimal N with D* <= target")
    r.add_argument("--budget-shifts", type=_int_list, default=[100])
    r.add_argument("--budget-perms", type=_int_list, default=[10])
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--method", choices=["exact", "ta", "auto"], default="auto")
    r.add_argument("--iterations", type=int, default=30000)
    r.add_argument("--restarts", type=int, default=4)
    r.add_argument("--hammersley", action="store_true",
                   help="2-D scrambled Hammersley search over candidate primes")
    r.add_argument("--out", help="write the best config as JSON")
    r.set_defaults(func=cmd_search)

    p = sub.add_parser("padic-check", help="p-adic invariant pass/fail report")
    p.add_argument("--primes", default="2,3,5,7,11")
    p.add_argument("--max-shift", type=int, default=20)
    p.add_argument("--n-list", default="10,100,1000")
    p.add_argument("--perms", type=int, default=5)
    p.add_argument("--seed", type=int, default=20240)
    p.set_defaults(func=cmd_padic_check)

    rp = sub.add_parser("reproduce", help="regenerate published tables from manifests")
    rp.add_argument("tables", nargs="+",
                    help="table1|table2|table3|table4 or a manifest JSON path")
    rp.add_argument("--include-long", action="store_true",
                    help="also run the hours-long exact entries")
    rp.set_defaults(func=cmd_reproduce)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
