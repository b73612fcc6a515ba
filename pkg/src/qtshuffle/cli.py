"""Command-line front end: cache management, verification suites, reports.

Suites aggregate the identity registry, the combinatorial recursions, and
the cross-checks between the symbolic and enumeration pipelines.  Reports
are deterministic: case order is fixed by case id, and the canonical JSON
form carries no timings, so runs with different worker counts are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .macdonald import (
    HTildeTable,
    build_htilde,
    check_identity,
    c_word,
    install_table,
    lhs_inner,
    nabla,
)
from .parking import (
    enumerate_family,
    pf_to_path,
    pi_poly,
    rhs_quasisym,
    verify_recursion,
)
from .qtfield import eval_numeric
from .shapes import (
    composition_str,
    compositions_of,
    partitions_of,
)
from .symfunc import SymFunc, fundamental_expand, p_

ENV_CACHE = "QTSHUFFLE_CACHE"
SUITES = ("macdonald", "operators", "recursion", "main-theorem", "shuffle-qsym", "paths", "all")


@dataclass
class CaseResult:
    case_id: str
    params: str
    status: str  # pass | fail | error
    lhs: str = ""
    rhs: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    n_max: int
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "error": 0}
        for c in self.cases:
            out[c.status] = out.get(c.status, 0) + 1
        return out

    def to_json(self) -> str:
        """Canonical form: no timings, so output is scheduling-independent."""
        data = {
            "suite": self.suite,
            "n_max": self.n_max,
            "passed": self.passed,
            "counts": self.counts(),
            "cases": [
                {
                    "id": c.case_id,
                    "params": c.params,
                    "status": c.status,
                    **({} if c.status == "pass" else {"lhs": c.lhs, "rhs": c.rhs}),
                }
                for c in self.cases
            ],
        }
        return json.dumps(data, indent=1, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["suite,case-id,params,status,seconds"]
        for c in self.cases:
            params = c.params.replace('"', "'")
            lines.append(f'{self.suite},{c.case_id},"{params}",{c.status},{c.seconds:.3f}')
        return "\n".join(lines) + "\n"

    def to_plain(self) -> str:
        lines = []
        for c in self.cases:
            line = f"[{c.status.upper():5s}] {c.case_id} ({c.seconds:.2f}s)"
            if c.status != "pass":
                line += f"\n    lhs: {c.lhs}\n    rhs: {c.rhs}"
            lines.append(line)
        counts = self.counts()
        lines.append(
            f"suite {self.suite}: {counts['pass']} passed, "
            f"{counts['fail']} failed, {counts['error']} errors"
        )
        return "\n".join(lines)


@dataclass(frozen=True)
class _Case:
    case_id: str
    params: str
    run: object  # () -> tuple[bool, str, str]


def _ident_case(ident: str, **params) -> _Case:
    pstr = ",".join(f"{k}={v}" for k, v in params.items())

    def run():
        rep = check_identity(ident, **params)
        return rep.passed, rep.lhs, rep.rhs

    return _Case(f"{ident}[{pstr}]", pstr, run)


def _abc_triples(n: int):
    for a in range(n + 1):
        for b in range(n - a + 1):
            yield a, b, n - a - b


# -- suite grids ------------------------------------------------------------


def _cases_macdonald(n_max: int) -> list:
    cases = []
    for n in range(0, n_max + 1):
        def run(n=n):
            build_htilde(n).verify()
            return True, "invariants hold", "invariants hold"

        cases.append(_Case(f"htilde-invariants[n={n}]", f"n={n}", run))
    for n in range(1, min(n_max, 4) + 1):
        cases.append(_ident_case("cauchy", n=n))
    shapes4 = [mu for d in range(1, min(n_max, 4) + 1) for mu in partitions_of(d)]
    for alpha in shapes4:
        for beta in shapes4:
            cases.append(_ident_case("sym-ab", alpha=alpha, beta=beta))
    for n in range(1, min(n_max, 5) + 1):
        for mu in partitions_of(n):
            cases.append(_ident_case("pieri-rel", mu=mu))
            for k in range(0, 4):
                cases.append(_ident_case("sum-c", mu=mu, k=k))
                cases.append(_ident_case("sum-d", nu=mu, k=k))
    for n in range(1, min(n_max, 5) + 1):
        for k in range(0, n + 1):
            cases.append(_ident_case("exp-abc", n=n, k=k))
        for r in range(0, n + 1):
            cases.append(_ident_case("reproducing", fname="e", r=r, lam=None, n=n))
            cases.append(_ident_case("reproducing", fname="h", r=r, lam=None, n=n))
        for d in range(1, n + 1):
            for lam in partitions_of(d):
                cases.append(_ident_case("reproducing", fname="s", r=d, lam=lam, n=n))
    for n in range(1, min(n_max, 6) + 1):
        for mu in partitions_of(n):
            for r in range(0, n + 1):
                cases.append(_ident_case("erh", mu=mu, r=r))
    return cases


def _operator_probes(maxdeg: int):
    probes = [("1", SymFunc.one())]
    for d in range(1, maxdeg + 1):
        for lam in partitions_of(d):
            probes.append((f"p{list(lam)}", p_(lam)))
    return probes


def _cases_operators(n_max: int) -> list:
    cases = []
    probes = _operator_probes(min(n_max, 3))
    for tag, P in probes:
        for a in range(1, 3):
            for b in range(1, 3):
                cases.append(_ident_case("commute", a=a, b=b, P=P, tag=tag))
        for a in range(-3, 3):
            for b in range(1, 4):
                cases.append(_ident_case("commutator", a=a, b=b, P=P, tag=tag))
    for n in range(1, min(n_max, 7) + 1):
        cases.append(_ident_case("en-decomp", n=n))
    bound = min(n_max, 6)
    for n in range(1, bound):  # lemma31 degree n, paired with m >= 1 elsewhere
        for a, b, c in _abc_triples(n):
            cases.append(_ident_case("lemma31", a=a, b=b, c=c))
    for n in range(1, bound):
        for m in range(1, min(n, bound - n) + 1):
            for d in range(0, min(3, bound - n) + 1):
                for nu in partitions_of(d):
                    cases.append(_ident_case("lemma32", m=m, nu=nu, n=n))
    for n in range(1, bound + 1):
        for m in range(1, n + 1):
            for a in range(0, n + 1):
                for b in range(0, n - a + 1):
                    cases.append(_ident_case("prop31", m=m, a=a, b=b, n=n))
                    cases.append(_ident_case("thm31", m=m, a=a, b=b, n=n))
                    cases.append(_ident_case("thm32", m=m, a=a, b=b, n=n))
                    cases.append(_ident_case("thm21", m=m, a=a, b=b, c=n - a - b))
    return cases


def _recursion_case(m, alpha, a, b, c) -> _Case:
    pstr = f"m={m},alpha={composition_str(alpha)},a={a},b={b},c={c}"

    def run():
        sym = check_identity("rec-m" if m > 1 else "rec-1", **(
            {"m": m, "alpha": alpha, "a": a, "b": b, "c": c} if m > 1
            else {"alpha": alpha, "a": a, "b": b, "c": c}
        ))
        comb = verify_recursion(m, alpha, a, b, c)
        bridge = lhs_inner((m,) + alpha, a, b, c).canonical() == comb.lhs
        ok = sym.passed and comb.passed and bridge
        return ok, f"sym:{sym.lhs} comb:{comb.lhs}", f"sym:{sym.rhs} comb:{comb.rhs}"

    return _Case(f"recursion[{pstr}]", pstr, run)


def _cases_recursion(n_max: int) -> list:
    cases = []
    for n in range(1, min(n_max, 6) + 1):
        for m in range(1, n + 1):
            for alpha in compositions_of(n - m):
                for a, b, c in _abc_triples(n):
                    cases.append(_recursion_case(m, alpha, a, b, c))
    return cases


def _main_theorem_case(alpha, a, b, c) -> _Case:
    pstr = f"alpha={composition_str(alpha)},a={a},b={b},c={c}"

    def run():
        lhs = lhs_inner(alpha, a, b, c)
        rhs = pi_poly(alpha, a, b, c)
        return lhs == rhs, lhs.canonical(), rhs.canonical()

    return _Case(f"main-theorem[{pstr}]", pstr, run)


def _cases_main_theorem(n_max: int) -> list:
    cases = []
    for n in range(1, n_max + 1):
        for alpha in compositions_of(n):
            for a, b, c in _abc_triples(n):
                cases.append(_main_theorem_case(alpha, a, b, c))
    return cases


def _cases_shuffle_qsym(n_max: int) -> list:
    cases = []
    for n in range(1, min(n_max, 5) + 1):
        for p in compositions_of(n):
            pstr = f"p={composition_str(p)}"

            def run(p=p):
                lhs = fundamental_expand(nabla(c_word(p)))
                rhs = rhs_quasisym(p)
                return lhs == rhs, repr(lhs), repr(rhs)

            cases.append(_Case(f"shuffle-qsym[{pstr}]", pstr, run))
    return cases


def _paths_case(alpha, a, b, c) -> _Case:
    pstr = f"alpha={composition_str(alpha)},a={a},b={b},c={c}"

    def run():
        fam = list(enumerate_family(alpha, a, b, c))
        paths = {pf_to_path(pf, a, b, c).steps for pf in fam}
        injective = len(paths) == len(fam)
        expected = eval_numeric(lhs_inner(alpha, a, b, c), 1, 1)
        return (
            injective and len(paths) == expected,
            f"paths={len(paths)} injective={injective}",
            f"inner(q=t=1)={expected}",
        )

    return _Case(f"paths[{pstr}]", pstr, run)


def _cases_paths(n_max: int) -> list:
    cases = []
    for n in range(1, min(n_max, 6) + 1):
        for alpha in compositions_of(n):
            for a, b, c in _abc_triples(n):
                cases.append(_paths_case(alpha, a, b, c))
    return cases


_SUITE_BUILDERS = {
    "macdonald": _cases_macdonald,
    "operators": _cases_operators,
    "recursion": _cases_recursion,
    "main-theorem": _cases_main_theorem,
    "shuffle-qsym": _cases_shuffle_qsym,
    "paths": _cases_paths,
}


def build_cases(suite: str, n_max: int) -> list:
    if suite == "all":
        cases = []
        for name in ("macdonald", "operators", "recursion", "main-theorem", "shuffle-qsym", "paths"):
            cases.extend(_SUITE_BUILDERS[name](n_max))
        return cases
    builder = _SUITE_BUILDERS.get(suite)
    if builder is None:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return builder(n_max)


def _run_case(case: _Case) -> CaseResult:
    t0 = time.perf_counter()
    try:
        ok, lhs, rhs = case.run()
        status = "pass" if ok else "fail"
    except Exception as err:  # a math bug must surface, not crash the grid
        status, lhs, rhs = "error", f"{type(err).__name__}: {err}", ""
    return CaseResult(case.case_id, case.params, status, lhs, rhs, time.perf_counter() - t0)


def run_suite(suite: str, n_max: int, jobs: int = 1) -> VerificationReport:
    cases = build_cases(suite, n_max)
    if jobs <= 1:
        results = [_run_case(c) for c in cases]
    else:
        # tables are built once up front so workers share read-only state
        for n in range(0, n_max + 1):
            build_htilde(n)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_case, cases))
    results.sort(key=lambda r: r.case_id)
    return VerificationReport(suite, n_max, results)


# -- commands ---------------------------------------------------------------


def _cache_dir(arg: str | None) -> str:
    return arg or os.environ.get(ENV_CACHE) or os.path.join(os.getcwd(), "qtshuffle-cache")


def cmd_build_cache(n_max: int, cache_dir: str) -> int:
    os.makedirs(cache_dir, exist_ok=True)
    for n in range(0, n_max + 1):
        path = os.path.join(cache_dir, f"htilde-{n}.json")
        if os.path.exists(path):
            try:
                table = HTildeTable.load(path)
            except Exception as err:
                print(f"error: cache file {path} failed validation: {err}", file=sys.stderr)
                return 1
            install_table(table)
            print(f"degree {n}: loaded and revalidated {path}")
        else:
            table = build_htilde(n)
            table.save(path)
            print(f"degree {n}: built and wrote {path}")
    return 0


def cmd_inner(comp, a: int, b: int, c: int, fmt: str = "plain") -> int:
    try:
        value = lhs_inner(comp, a, b, c)
    except ValueError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    if fmt == "json":
        print(json.dumps({
            "comp": composition_str(comp),
            "abc": [a, b, c],
            "value": value.canonical(),
            "display": value.display(),
        }, sort_keys=True))
    elif fmt == "latex":
        print(value.display("latex"))
    else:
        print(value.display())
    return 0


def cmd_enumerate(comp, a: int, b: int, c: int, list_flag: bool = False, fmt: str = "plain") -> int:
    comp = tuple(comp)
    if a + b + c != sum(comp) or min(a, b, c) < 0:
        print(f"usage error: (a,b,c)=({a},{b},{c}) must be nonnegative and sum to {sum(comp)}",
              file=sys.stderr)
        return 2
    fam = list(enumerate_family(comp, a, b, c))
    poly = pi_poly(comp, a, b, c)
    if fmt == "json":
        data = {
            "comp": composition_str(comp),
            "abc": [a, b, c],
            "count": len(fam),
            "polynomial": poly.canonical(),
        }
        if list_flag:
            data["parking_functions"] = [
                {
                    "pf": pf.text(),
                    "area": pf.stats.area,
                    "dinv": pf.stats.dinv,
                    "sigma": list(pf.stats.sigma),
                    "ides": sorted(pf.stats.ides),
                    "path": pf_to_path(pf, a, b, c).render(),
                }
                for pf in fam
            ]
        print(json.dumps(data, sort_keys=True))
        return 0
    print(f"count: {len(fam)}")
    print(f"polynomial: {poly.display()}")
    if list_flag:
        for pf in fam:
            st = pf.stats
            print(
                f"  {pf.text()} | area={st.area} dinv={st.dinv} "
                f"sigma={''.join(str(v) if v < 10 else f'({v})' for v in st.sigma)} "
                f"ides={sorted(st.ides)} path={pf_to_path(pf, a, b, c).render()}"
            )
    return 0


def cmd_verify(suite: str, n_max: int, jobs: int, fmt: str = "plain") -> int:
    try:
        report = run_suite(suite, n_max, jobs)
    except ValueError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    if fmt == "json":
        print(report.to_json())
    elif fmt == "csv":
        print(report.to_csv(), end="")
    else:
        print(report.to_plain())
    return 0 if report.passed else 1


# -- argument parsing -------------------------------------------------------


def _parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtshuffle",
        description="Exact q,t verification of compositional shuffle identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cache = sub.add_parser("build-cache", help="build and validate Macdonald table caches")
    p_cache.add_argument("--n-max", type=int, default=4)
    p_cache.add_argument("--cache", default=None, help=f"cache directory (or ${ENV_CACHE})")

    p_inner = sub.add_parser("inner", help="print the pairing against e_a h_b h_c")
    p_inner.add_argument("--comp", required=True, help="composition, e.g. 3,2")
    p_inner.add_argument("--abc", required=True, help="a,b,c with a+b+c = |comp|")
    p_inner.add_argument("--format", default="plain", choices=("plain", "json", "latex"))

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    p_verify.add_argument("--n-max", type=int, default=4)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", default="plain", choices=("plain", "json", "csv"))
    p_verify.add_argument("--cache", default=None, help="warm table cache directory to load first")

    p_enum = sub.add_parser("enumerate", help="list a shuffle-filtered parking family")
    p_enum.add_argument("--comp", required=True)
    p_enum.add_argument("--abc", required=True)
    p_enum.add_argument("--list", action="store_true")
    p_enum.add_argument("--format", default="plain", choices=("plain", "json"))

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if args.command == "build-cache":
        return cmd_build_cache(args.n_max, _cache_dir(args.cache))
    if args.command == "inner":
        comp = _parse_ints(args.comp)
        abc = _parse_ints(args.abc)
        if len(abc) != 3:
            print("usage error: --abc needs exactly three integers", file=sys.stderr)
            return 2
        return cmd_inner(comp, *abc, fmt=args.format)
    if args.command == "verify":
        if args.cache:
            cache_dir = _cache_dir(args.cache)
            for n in range(0, args.n_max + 1):
                path = os.path.join(cache_dir, f"htilde-{n}.json")
                if os.path.exists(path):
                    install_table(HTildeTable.load(path))
        return cmd_verify(args.suite, args.n_max, args.jobs, args.format)
    if args.command == "enumerate":
        comp = _parse_ints(args.comp)
        abc = _parse_ints(args.abc)
        if len(abc) != 3:
            print("usage error: --abc needs exactly three integers", file=sys.stderr)
            return 2
        return cmd_enumerate(comp, *abc, list_flag=args.list, fmt=args.format)
    raise AssertionError("unreachable")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
