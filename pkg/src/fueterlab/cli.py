"""Command-line driver.

Subcommands: ``verify`` (criterion equivalence suites on a seeded corpus),
``reconstruct`` (boundary-integral reproduction convergence table),
``conjugate`` (conjugate-harmonic completion of a polynomial), ``moments``
(quadrature against closed-form sphere moments).

Exit codes: 0 all assertions pass, 1 mathematical mismatch, 2 config
error, 3 precondition violation.  ``FUETER_LAB_THREADS`` caps the worker
pool used for per-member suite evaluation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from .boundary import (
    Domain,
    hopf_quadrature,
    quadrature_for,
    sphere_monomial_integral,
)
from .config import ConfigError, SuiteConfig
from .corpus import generate_corpus
from .criteria import check_cor1, check_cor2, check_eq2, check_thm4
from .kernels import KernelCache, cauchy_fueter_transform
from .neumann import (
    NotHarmonicError,
    compatibility_check,
    operator_R,
    SPHERE,
)
from .quaternions import ComplexPair, Quaternion
from .scalars import GaussianRational
from .wirtinger import (
    QFunction,
    WPoly,
    Z1B,
    Z2B,
    Z1,
    Z2,
    ONE,
    is_psi_regular,
    is_regular,
    psi_d,
    wpoly_from_json,
    wpoly_to_json,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3


def _thread_count() -> int:
    raw = os.environ.get("FUETER_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_members(fn, members):
    """Apply fn across corpus members, optionally in a thread pool; the
    result list is always assembled in corpus order."""
    workers = _thread_count()
    if workers == 1:
        return [fn(m) for m in members]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, members))


def _domain_from_config(config: SuiteConfig) -> Domain:
    if config.domain_kind == "sphere":
        return Domain.unit_sphere()
    return Domain.ellipsoid(Fraction(config.r1), Fraction(config.r2))


def _confusion(rows):
    matrix = [[0, 0], [0, 0]]
    for actual, predicted in rows:
        matrix[0 if actual else 1][0 if predicted else 1] += 1
    return matrix


def _diagonal(matrix) -> bool:
    return matrix[0][1] == 0 and matrix[1][0] == 0


def cmd_verify(config: SuiteConfig) -> int:
    domain = _domain_from_config(config)
    quad = quadrature_for(domain, config.order_eta, config.order_xi)
    members = generate_corpus(config.seed, config.corpus_size, config.max_degree)
    use_float = config.backend == "float"

    def eval_thm1(member):
        f = member.f.to_float() if use_float else member.f
        report = check_eq2(f, domain, quad)
        return bool(is_psi_regular(member.f)), bool(report.exact_zero)

    def eval_cor1(member):
        g = member.f.gamma()
        gf = g.to_float() if use_float else g
        report = check_cor1(gf, domain, quad)
        return bool(is_regular(g)), bool(report.exact_zero)

    cor2_pairs = [
        (GaussianRational(1), GaussianRational(0)),
        (GaussianRational(0), GaussianRational(1)),
        (GaussianRational(1), GaussianRational(0, 1)),
        (GaussianRational(2), GaussianRational(-1)),
    ]

    def eval_cor2(member):
        a, b = cor2_pairs[member.index % len(cor2_pairs)]
        f = member.f.to_float() if use_float else member.f
        report = check_cor2(f, a if not use_float else complex(a),
                            b if not use_float else complex(b), domain, quad)
        return bool(is_psi_regular(member.f)), bool(report.exact_zero)

    suites = {}
    all_pass = True
    for name, fn in (("thm1", eval_thm1), ("cor1", eval_cor1), ("cor2", eval_cor2)):
        rows = _map_members(fn, members)
        matrix = _confusion(rows)
        ok = _diagonal(matrix)
        all_pass = all_pass and ok
        suites[name] = {
            "confusion": matrix,
            "diagonal": ok,
            "members": [
                {"index": m.index, "kind": m.kind,
                 "actual": rows[i][0], "predicted": rows[i][1]}
                for i, m in enumerate(members)
            ],
        }

    thm4_cases = [
        ("h=(1,0)", ONE, WPoly.zero(), Z1 * Z2),
        ("h=(1,0)", ONE, WPoly.zero(), Z2 * Z2),
        ("h=(1,0)", ONE, WPoly.zero(), Z1B),
        ("h=(1,0)", ONE, WPoly.zero(), Z2B),
        ("h=(1,z1)", ONE, Z1, Z2),
        ("h=(1,z1)", ONE, Z1, Z2 * Z2),
        ("h=(1,z1)", ONE, Z1, Z2B),
    ]
    thm4_rows = []
    thm4_members = []
    for label, h1, h2, f in thm4_cases:
        if use_float:
            report = check_thm4(f.to_float(), h1.to_float(), h2.to_float(),
                                domain, quad)
        else:
            report = check_thm4(f, h1, h2, domain, quad)
        actual = report.extra["holomorphic"]
        predicted = report.exact_zero
        thm4_rows.append((actual, predicted))
        thm4_members.append({"case": label, "f": repr(f),
                             "actual": actual, "predicted": predicted})
    thm4_matrix = _confusion(thm4_rows)
    thm4_ok = _diagonal(thm4_matrix)
    all_pass = all_pass and thm4_ok
    suites["thm4"] = {"confusion": thm4_matrix, "diagonal": thm4_ok,
                      "members": thm4_members}

    report = {
        "config": config.to_json_dict(),
        "corpus_size": len(members),
        "suites": suites,
        "all_pass": all_pass,
    }
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "verify.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
    for name in sorted(suites):
        state = "ok" if suites[name]["diagonal"] else "MISMATCH"
        print(f"  {name}: confusion {suites[name]['confusion']} {state}")
    return EXIT_OK if all_pass else EXIT_MISMATCH


def cmd_reconstruct(config: SuiteConfig) -> int:
    trace_fn = QFunction(Z1B, Z2B)
    constant = QFunction(ONE, WPoly.zero())
    interior = ComplexPair.of_floats(0.25, 0.25)
    exterior = ComplexPair.of_floats(2.0, 0.0)
    center = ComplexPair.of_floats(0.0, 0.0)
    expected = trace_fn.evaluate(complex(interior.z1), complex(interior.z2))

    rows = []
    series = {"interior": [], "exterior": [], "constant": []}
    for order in config.recon_orders:
        quad = hopf_quadrature(order, order)
        cache = KernelCache(quad)
        t0 = time.perf_counter()
        got = cauchy_fueter_transform(quad, trace_fn, interior, cache=cache)
        err_int = abs(got - expected.to_floats())
        t1 = time.perf_counter()
        got_ext = cauchy_fueter_transform(quad, trace_fn, exterior, cache=cache)
        err_ext = abs(got_ext)
        t2 = time.perf_counter()
        got_const = cauchy_fueter_transform(quad, constant, center, cache=cache)
        err_const = abs(got_const - Quaternion.of_floats(1, 0, 0, 0))
        t3 = time.perf_counter()
        rows.append((order, "interior(0.25,0.25)", err_int, t1 - t0))
        rows.append((order, "exterior(2,0)", err_ext, t2 - t1))
        rows.append((order, "constant@center", err_const, t3 - t2))
        series["interior"].append(err_int)
        series["exterior"].append(err_ext)
        series["constant"].append(err_const)

    ok = series["interior"][-1] < 1e-8 and series["exterior"][-1] < 1e-8
    ok = ok and all(e < 1e-12 for e in series["constant"])
    for errs in (series["interior"], series["exterior"]):
        for prev, nxt in zip(errs, errs[1:]):
            if nxt > prev and nxt > 1e-10:
                ok = False

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "reconstruct.csv"
    with open(path, "w") as fh:
        fh.write("orders,target,abs_error,seconds\n")
        for order, target, err, sec in rows:
            fh.write(f"{order},{target},{err!r},{sec:.6f}\n")
    print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_conjugate(input_path: str, config: SuiteConfig) -> int:
    try:
        data = json.loads(Path(input_path).read_text())
    except FileNotFoundError:
        print(f"input file not found: {input_path}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"bad polynomial JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    records = data["f1"] if isinstance(data, dict) else data
    f1 = wpoly_from_json(records)

    if not f1.is_harmonic():
        print("input is not harmonic; Laplacian:", file=sys.stderr)
        print(f"  {f1.laplacian()!r}", file=sys.stderr)
        return EXIT_PRECONDITION

    g = SPHERE.normal_form(SPHERE.cr_l_num(f1).conj())
    compat_ok, offending = compatibility_check(
        g, max_degree=max(10, g.degree()))
    lifted = operator_R(f1, max_degree=max(10, 2 * f1.degree()))
    residual_zero = psi_d(lifted).is_zero

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "conjugate.json"
    payload = {
        "f2": wpoly_to_json(lifted.f2),
        "certificate": {
            "dprime_residual_exact_zero": bool(residual_zero),
            "compat_components": [list(k) for k in offending],
        },
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
    return EXIT_OK if residual_zero and compat_ok else EXIT_MISMATCH


def cmd_moments(config: SuiteConfig) -> int:
    quad = hopf_quadrature(config.order_eta, config.order_xi)
    rows = []
    ok = True
    cases = []
    for a in range(0, 5):
        for c in range(0, 5):
            if a + c <= 8:
                cases.append((a, a, c, c))
    cases += [(1, 0, 0, 0), (0, 0, 1, 0), (2, 1, 0, 0), (1, 1, 1, 0)]
    z1, z2 = quad.node_z()
    for (a, b, c, d) in cases:
        exact = sphere_monomial_integral(a, b, c, d)
        vals = z1 ** a * np.conj(z1) ** b * z2 ** c * np.conj(z2) ** d
        got = complex(quad.integrate_values(vals))
        if exact:
            err = abs(got - exact) / abs(exact)
        else:
            err = abs(got)
        ok = ok and err < 1e-12
        rows.append((a, b, c, d, exact, got, err))

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "moments.csv"
    with open(path, "w") as fh:
        fh.write("a,b,c,d,exact,quadrature,rel_err\n")
        for a, b, c, d, exact, got, err in rows:
            fh.write(f"{a},{b},{c},{d},{exact!r},{got.real!r},{err!r}\n")
    print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_MISMATCH


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fueterlab",
        description="Boundary criteria and transforms for quaternionic "
                    "regular functions on domains in C^2.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "reconstruct", "moments"):
        p = sub.add_parser(name)
        _common_flags(p)
    p = sub.add_parser("conjugate")
    p.add_argument("input", help="polynomial JSON file with the first component")
    _common_flags(p)
    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML config file")
    p.add_argument("--seed", type=int, help="corpus seed override")
    p.add_argument("--out", help="output directory override")
    p.add_argument("--backend", choices=("exact", "float"),
                   help="verdict backend override")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = SuiteConfig.from_toml(args.config) if args.config else SuiteConfig()
        config = config.with_overrides(seed=args.seed, out_dir=args.out,
                                       backend=args.backend)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "reconstruct":
            return cmd_reconstruct(config)
        if args.command == "conjugate":
            return cmd_conjugate(args.input, config)
        if args.command == "moments":
            return cmd_moments(config)
    except NotHarmonicError as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
