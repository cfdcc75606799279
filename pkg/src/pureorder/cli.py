"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 factorization budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .dedekind import dedekind_test
from .errors import FactorBudgetExceeded, InvalidInput
from .exactmath.integers import FactorBudget, Factorization, factorize, is_wieferich
from .exactmath.polys import IntPoly
from .monogeneity import DEFAULT_SEARCH_BOUND, cubic_mixed_search, uniform_exponent_criterion
from .oracle import audit, round2_max_order
from .orders import OrderLattice, is_q_maximal, is_ring
from .radical import MaxOrderResult, assemble_max_order, disc_formula, normalize_field
from .witness import chi_of_beta_prime

SCHEMA_VERSION = "1"
ENV_PREFIX = "PUREORDER_"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    factor_budget: int = 2_000_000
    search_bound: int = DEFAULT_SEARCH_BOUND
    json: bool = False
    jobs: int = 1

    @property
    def budget(self) -> FactorBudget:
        return FactorBudget(rho_iterations=self.factor_budget, seed=self.seed)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    return int(raw) if raw not in (None, "") else default


def _env_flag(name: str) -> bool:
    return os.environ.get(ENV_PREFIX + name, "").lower() in ("1", "true", "yes")


def disc_string(f: Factorization) -> str:
    return str(f).replace("*", "·")


def _emit(obj: dict, out):
    out.write(json.dumps({"schema_version": SCHEMA_VERSION, **obj}, sort_keys=True) + "\n")


def _result_json(res: MaxOrderResult) -> dict:
    return {
        "field": res.field.to_json(),
        "factors": [{"name": f.name, "generator": f.generator.to_json()} for f in res.factors],
        "basis": [b.to_json() for b in res.basis],
        "order": res.order.to_json(),
        "disc": disc_string(res.disc),
        "disc_value": str(res.disc.value),
        "x_exponent": res.x_exponent,
        "disc_matches_formula": res.disc_matches_formula(),
    }


def _explain(res: MaxOrderResult, cfg: RunConfig) -> dict:
    fld = res.field
    T = fld.minpoly
    reports = [dedekind_test(T, q, seed=cfg.seed).to_json() for q in sorted(set(fld.primes) | {fld.p})]
    out = {"dedekind_alpha": reports}
    if fld.a % fld.p:
        out["dedekind_beta"] = dedekind_test(IntPoly.shifted_radical(fld.p, fld.a), fld.p, seed=cfg.seed).to_json()
    if fld.wieferich:
        out["chi"] = chi_of_beta_prime(fld.p, fld.a).to_json()
    return out


def _render_field(fld) -> str:
    return f"Q({fld.a}^(1/{fld.p}))"


def cmd_analyze(args, cfg: RunConfig, out) -> int:
    fld = normalize_field(args.p, args.a, cfg.budget)
    res = assemble_max_order(fld, cfg.budget)
    if cfg.json:
        obj = {"command": "analyze", **_result_json(res)}
        if args.explain:
            obj["explain"] = _explain(res, cfg)
        _emit(obj, out)
        return 0
    alpha = f"{fld.a}^(1/{fld.p})"
    print(f"field        {_render_field(fld)}   (input a = {fld.a_input}, alpha = {alpha})", file=out)
    if fld.a != abs(fld.a_input) or fld.sign < 0:
        print(f"normalized   root of X^{fld.p} - ({fld.a_input}) = {fld.sign * fld.scale} * alpha", file=out)
    print(f"a            {fld.fact}", file=out)
    print(f"wieferich    {str(fld.wieferich).lower()}", file=out)
    for (q, e), (u, v), c in zip(fld.fact.factors, fld.exps, fld.c):
        print(f"  q={q}  e={e}  (u, v)=({u}, {v})  c={c}", file=out)
    print("factors      " + " * ".join(f"Z[{f.generator.label}]" for f in res.factors), file=out)
    print("basis", file=out)
    for b in res.basis:
        print(f"  {b.label}", file=out)
    print(f"disc         {res.disc}   (x = {res.x_exponent})", file=out)
    if not res.disc_matches_formula():
        print(f"WARNING      closed-form discriminant {disc_formula(fld)} disagrees", file=out)
    if args.explain:
        print(json.dumps(_explain(res, cfg), indent=2, sort_keys=True), file=out)
    return 0


def cmd_wieferich(args, cfg: RunConfig, out) -> int:
    v = is_wieferich(args.q, args.r)
    if cfg.json:
        _emit({"command": "wieferich", "q": str(args.q), "r": str(args.r), "wieferich": v}, out)
    else:
        print(str(v).lower(), file=out)
    return 0


def cmd_disc(args, cfg: RunConfig, out) -> int:
    fld = normalize_field(args.p, args.a, cfg.budget)
    res = assemble_max_order(fld, cfg.budget)
    if cfg.json:
        _emit({"command": "disc", "disc": disc_string(res.disc), "disc_value": str(res.disc.value),
               "formula": disc_string(disc_formula(fld)), "x_exponent": res.x_exponent}, out)
    else:
        print(res.disc, file=out)
    return 0


def cmd_basis(args, cfg: RunConfig, out) -> int:
    fld = normalize_field(args.p, args.a, cfg.budget)
    res = assemble_max_order(fld, cfg.budget)
    if cfg.json:
        _emit({"command": "basis", "alpha": f"{fld.a}^(1/{fld.p})", "basis": [b.to_json() for b in res.basis]}, out)
    else:
        for b in res.basis:
            print(b.label, file=out)
    return 0


def cmd_monogenic(args, cfg: RunConfig, out) -> int:
    if args.q1 is not None or args.q2 is not None:
        if args.q1 is None or args.q2 is None or args.p not in (None, 3):
            raise InvalidInput("--q1/--q2 need each other and p = 3")
        verdict = cubic_mixed_search(args.q1, args.q2, cfg.search_bound)
    else:
        if args.p is None or args.a is None:
            raise InvalidInput("give --p and --a, or --q1 and --q2")
        verdict = uniform_exponent_criterion(normalize_field(args.p, args.a, cfg.budget))
    if cfg.json:
        _emit({"command": "monogenic", **verdict.to_json()}, out)
    else:
        line = verdict.status.value
        if verdict.generator:
            line += f"  generator {verdict.generator.label}"
        if verdict.solutions:
            line += f"  solution {verdict.solutions[0]}"
        if verdict.equation:
            line += f"  [{verdict.equation}]"
        print(line, file=out)
    return 0


def _verify_lattice(lat: OrderLattice, p: int, a: int, cfg: RunConfig) -> dict:
    if lat.minpoly != IntPoly.x_pow_minus(p, a):
        raise InvalidInput("lattice minpoly does not match X^p - a")
    oracle = round2_max_order(p, a, cfg.budget)
    checks = [
        {"name": "is_ring", "passed": is_ring(lat), "detail": ""},
        {"name": "lattice_equality", "passed": lat == oracle, "detail": ""},
    ]
    if checks[0]["passed"]:
        primes = factorize(p * a, cfg.budget).primes
        bad = [q for q in primes if not is_q_maximal(lat, q)]
        checks.append({"name": "per_prime_maximality", "passed": not bad, "detail": str(bad) if bad else ""})
    return {"field": f"p={p},a={a}", "passed": all(c["passed"] for c in checks), "checks": checks}


def cmd_verify(args, cfg: RunConfig, out) -> int:
    if args.lattice:
        with open(args.lattice) as fh:
            lat = OrderLattice.from_json(json.load(fh))
        fld = normalize_field(args.p, args.a, cfg.budget)
        report = _verify_lattice(lat, fld.p, fld.a, cfg)
    else:
        res = assemble_max_order(normalize_field(args.p, args.a, cfg.budget), cfg.budget)
        report = audit(res, cfg.budget).to_json()
    if cfg.json:
        _emit({"command": "verify", **report}, out)
    else:
        for c in report["checks"]:
            print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  {c['detail']}".rstrip(), file=out)
        print("verified" if report["passed"] else "VERIFICATION FAILED", file=out)
    return 0 if report["passed"] else 1


def sweep_one(p: int, a: int, seed: int = 0, rho_iterations: int = 2_000_000) -> dict:
    """One JSONL record: pipeline vs oracle for a single (p, a)."""
    budget = FactorBudget(rho_iterations=rho_iterations, seed=seed)
    rec = {"p": str(p), "a": str(a)}
    try:
        fld = normalize_field(p, a, budget)
    except InvalidInput as exc:
        return {**rec, "status": "invalid", "reason": str(exc)}
    res = assemble_max_order(fld, budget)
    rep = audit(res, budget)
    checks = {c.name: c.passed for c in rep.checks}
    return {
        **rec,
        "status": "ok" if rep.passed else "disagree",
        "a_normalized": str(fld.a),
        "wieferich": fld.wieferich,
        "disc": disc_string(res.disc),
        "formula_disc": disc_string(disc_formula(fld)),
        "pipeline_equals_oracle": checks["lattice_equality"],
        "disc_matches_formula": checks["disc_formula"],
        "audit": rep.to_json(),
    }


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def cmd_sweep(args, cfg: RunConfig, out) -> int:
    ps = [int(x) for x in str(args.p).split(",") if x]
    tasks = [(p, a) for p in ps for a in _parse_range(args.a)]
    ps_arg = [t[0] for t in tasks]
    as_arg = [t[1] for t in tasks]
    seeds = [cfg.seed] * len(tasks)
    iters = [cfg.factor_budget] * len(tasks)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = pool.map(sweep_one, ps_arg, as_arg, seeds, iters, chunksize=8)
            bad = _write_records(records, out)
    else:
        bad = _write_records(map(sweep_one, ps_arg, as_arg, seeds, iters), out)
    return 1 if bad else 0


def _write_records(records, out) -> int:
    bad = 0
    for rec in records:
        bad += rec["status"] == "disagree"
        _emit(rec, out)
    return bad


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=_env_flag("JSON"), help="machine-readable output")
    common.add_argument("--seed", type=int, default=_env_int("SEED", 0))
    common.add_argument("--factor-budget", type=int, default=_env_int("FACTOR_BUDGET", 2_000_000),
                        help="Pollard rho iteration cap per attempt")
    common.add_argument("--search-bound", type=int, default=_env_int("SEARCH_BOUND", DEFAULT_SEARCH_BOUND))
    common.add_argument("--jobs", type=int, default=_env_int("JOBS", 1))
    common.add_argument("--out", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="pureorder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def field_cmd(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--a", type=int, required=True)
        return sp

    sp = field_cmd("analyze", "ring of integers, basis and discriminant")
    sp.add_argument("--explain", action="store_true", help="include Dedekind and chi reports")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("wieferich", parents=[common], help="is q a Wieferich prime to base r")
    sp.add_argument("q", type=int)
    sp.add_argument("r", type=int)
    sp.set_defaults(func=cmd_wieferich)

    field_cmd("disc", "discriminant of the ring of integers").set_defaults(func=cmd_disc)
    field_cmd("basis", "explicit integral basis").set_defaults(func=cmd_basis)

    sp = sub.add_parser("monogenic", parents=[common], help="monogeneity verdict")
    sp.add_argument("--p", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--q1", type=int)
    sp.add_argument("--q2", type=int)
    sp.set_defaults(func=cmd_monogenic)

    sp = field_cmd("verify", "audit a result against the round-2 oracle")
    sp.add_argument("--lattice", help="JSON lattice file to verify instead of the pipeline result")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", parents=[common], help="pipeline/oracle agreement over many fields (JSONL)")
    sp.add_argument("--p", required=True, help="comma-separated degrees, e.g. 3,5")
    sp.add_argument("--a", required=True, help="range LO..HI (inclusive)")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(seed=args.seed, factor_budget=args.factor_budget, search_bound=args.search_bound,
                    json=args.json, jobs=max(1, args.jobs))
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        return args.func(args, cfg, out)
    except (InvalidInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FactorBudgetExceeded as exc:
        print(f"error: {exc}; raise --factor-budget", file=sys.stderr)
        return 3
    finally:
        if args.out:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
