"""Batch driver: ``jacobihom <command> [flags]``.

Every command prints one JSON document (or writes it to ``--out``). Flags can
also come from a flat ``key = value`` file given with ``--config``; command
line flags win. Exit codes: 0 pass, 1 property failure, 2 budget exceeded,
3 internal invariant violated.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time
from pathlib import Path

from . import cecomplex, cocycle, dihedral, fock, ftiso, jmat, lie, shiftmap
from .algebra import AxiomViolation, InvolutiveAlgebra, catalog, load_algebra

THREADS_ENV = "JACOBIHOM_THREADS"

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def resolve_algebra(spec: str) -> InvolutiveAlgebra:
    """Catalog name, or a path to an algebra file."""
    if Path(spec).is_file():
        return load_algebra(spec)
    return catalog(spec)


def read_config(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _range(text: str) -> list[int]:
    if "-" in text.strip("-"):
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jacobihom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--config", help="flat key = value file; flags override it")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        if seed:
            sp.add_argument("--seed", type=_nonneg, default=0)
        sp.add_argument("--threads", type=_positive, default=None,
                        help=f"worker processes (default from ${THREADS_ENV}, else 1)")

    b = sub.add_parser("betti", help="Betti numbers and primitives of a classical Lie algebra over R")
    common(b)
    b.add_argument("--family", choices=lie.FAMILIES)
    b.add_argument("--n", type=_positive)
    b.add_argument("--R", default="k")
    b.add_argument("--maxdeg", type=_nonneg)
    b.add_argument("--method", choices=("modular", "exact"), default="modular")
    b.add_argument("--zero-weight-only", action="store_true")
    b.add_argument("--budget", type=_positive, default=cecomplex.DEFAULT_BUDGET)
    b.add_argument("--csv", help="also write a degree/betti/primitive table")

    d = sub.add_parser("dihedral", help="Hochschild, cyclic, dihedral or skew-dihedral homology of R")
    common(d, seed=False)
    d.add_argument("--R", default="k")
    d.add_argument("--variant", choices=sorted(dihedral.VARIANTS), default="plus")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--max-n", type=_nonneg)
    g.add_argument("--n", type=_nonneg)
    d.add_argument("--csv")

    s = sub.add_parser("stable-scan", help="Betti/primitive table across n with stabilization flags")
    common(s)
    s.add_argument("--family", choices=lie.FAMILIES)
    s.add_argument("--n-range", type=_range, default=[1, 2, 3])
    s.add_argument("--R", default="k")
    s.add_argument("--maxdeg", type=_nonneg, default=5)
    s.add_argument("--method", choices=("modular", "exact"), default="modular")
    s.add_argument("--budget", type=_positive, default=cecomplex.DEFAULT_BUDGET)
    s.add_argument("--csv")

    v = sub.add_parser("verify", help="run every property suite")
    common(v)
    v.add_argument("--samples", type=_positive, default=50)
    v.add_argument("--R", default=None, help="restrict the algebra-dependent suites to one algebra")

    c = sub.add_parser("cocycle", help="Psi, the Japanese cocycle and the extended bracket")
    common(c)
    c.add_argument("--family", choices=tuple(jmat.FAMILY_TAU), default="o_odd")
    c.add_argument("--R", default="k")
    c.add_argument("--samples", type=_positive, default=100)

    f = sub.add_parser("fock", help="normal-ordered fermion bilinears on a truncated Fock space")
    common(f)
    f.add_argument("--m", type=_positive, default=3)
    f.add_argument("--samples", type=_positive, default=50)

    a = sub.add_parser("algebra-validate", help="check the axioms of an algebra file or catalog entry")
    common(a, seed=False)
    a.add_argument("R")
    return p


# required, but allowed to come from the config file
REQUIRED = {"betti": ("family", "n", "maxdeg"), "stable-scan": ("family",)}


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        conf = read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        given = set()
        for tok in (argv if argv is not None else sys.argv[1:]):
            if tok.startswith("--"):
                given.add(tok[2:].split("=", 1)[0].replace("-", "_"))
        for key, value in conf.items():
            if key not in known or key in ("config", "help"):
                parser.error(f"unknown config key {key!r}")
            if key in given:
                continue
            action = known[key]
            if action.const is True and action.nargs == 0:
                setattr(args, key, value.lower() in ("1", "true", "yes"))
            else:
                conv = action.type or str
                try:
                    val = conv(value)
                except (ValueError, argparse.ArgumentTypeError) as exc:
                    parser.error(f"config key {key}: {exc}")
                if action.choices is not None and val not in action.choices:
                    parser.error(f"config key {key}: {val!r} not one of {list(action.choices)}")
                setattr(args, key, val)
    missing = [k for k in REQUIRED.get(args.command, ()) if getattr(args, k) is None]
    if missing:
        parser.error(f"{args.command}: missing " + ", ".join("--" + m.replace("_", "-") for m in missing))
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return args


# -- commands -------------------------------------------------------------------------

def _write_csv(path: str, header: list, rows: list) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def cmd_betti(args) -> tuple[dict, int]:
    R = resolve_algebra(args.R)
    L = lie.build(args.family, args.n, R)
    rep = cecomplex.betti_numbers(L, args.maxdeg, args.method, args.seed, workers=args.threads,
                                  budget=args.budget, zero_weight_only=args.zero_weight_only)
    out = json.loads(rep.to_json())
    out["lie_dim"] = L.dim
    out["claims"] = ["H_*(g) is a graded Hopf algebra freely generated by its primitives"]
    if args.csv:
        p = rep.primitives or [None] * len(rep.betti)
        _write_csv(args.csv, ["degree", "betti", "primitive"], [[n, b, p[n]] for n, b in enumerate(rep.betti)])
    status = EXIT_OK if rep.euler_ok else EXIT_INTERNAL
    return out, status


def cmd_dihedral(args) -> tuple[dict, int]:
    R = resolve_algebra(args.R)
    top = args.n if args.n is not None else (args.max_n if args.max_n is not None else 4)
    rep = dihedral.homology_report(R, top, args.variant)
    if args.n is not None:
        rep["degrees"] = [row for row in rep["degrees"] if row["n"] == args.n]
    rep["claims"] = ["HD_i(k)=k for i = 0 mod 4", "HD_0(R)=(R^ab)_1"]
    rep["abelianization_fixed_dim"] = len(R.abelianization.fixed_basis)
    if args.csv:
        _write_csv(args.csv, ["n", "dim_chain", "dim_coinv", "betti"],
                   [[r["n"], r["dim_chain"], r["dim_coinv"], r["betti"]] for r in rep["degrees"]])
    return rep, EXIT_OK


def cmd_stable_scan(args) -> tuple[dict, int]:
    R = resolve_algebra(args.R)
    rows = []
    for n in args.n_range:
        L = lie.build(args.family, n, R)
        rep = cecomplex.betti_numbers(L, args.maxdeg, args.method, args.seed, workers=args.threads,
                                      budget=args.budget, zero_weight_only=True)
        rows.append({"n": n, "lie_dim": L.dim, "betti": rep.betti, "primitives": rep.primitives})
    prediction = dihedral.predicted_primitives(R, args.maxdeg, "skew", 1)
    table = []
    for d in range(args.maxdeg + 1):
        series = [r["primitives"][d] if r["primitives"] else None for r in rows]
        table.append({
            "degree": d,
            "primitives": series,
            "stabilized": len(series) > 1 and series[-1] == series[-2],
            "skew_dihedral_prediction": prediction.get(d, 0),
        })
    out = {"family": args.family, "R": R.name, "runs": rows, "table": table,
           "claims": ["primitives of the stable limit sit at skew-dihedral degree + 1"]}
    if args.csv:
        _write_csv(args.csv, ["degree"] + [f"p(n={n})" for n in args.n_range] + ["stabilized", "prediction"],
                   [[t["degree"], *t["primitives"], t["stabilized"], t["skew_dihedral_prediction"]] for t in table])
    return out, EXIT_OK


def _suite(name: str, claim: str, fn) -> dict:
    t0 = time.perf_counter()
    try:
        result = fn()
    except (AssertionError, cocycle.InternalMismatch) as exc:
        return {"suite": name, "claim": claim, "status": "internal-error", "detail": str(exc)}
    ok, detail = result if isinstance(result, tuple) else (result, None)
    entry = {"suite": name, "claim": claim, "status": "pass" if ok else "fail",
             "seconds": round(time.perf_counter() - t0, 3)}
    if detail is not None:
        entry["detail"] = detail
    return entry


def verify_suites(seed: int, samples: int, only: str | None = None) -> list[dict]:
    from .algebra import CATALOG_NAMES

    names = [only] if only else list(CATALOG_NAMES)
    algs = [resolve_algebra(n) for n in names]
    out = []

    def restriction():
        for fam in jmat.FAMILY_TAU:
            for n in (2, 3):
                for A in algs:
                    r = ftiso.restriction_check(fam, n, samples, seed, A)
                    if not r.ok:
                        return False, {"family": fam, "n": n, "R": A.name, "counterexample": r.counterexample}
        return True

    def brackets():
        for A in algs:
            I = lie.index_window(3)
            r = ftiso.bracket_preservation(I, ftiso.random_pairs(A, I, samples, seed))
            if not r.ok:
                return False, r.to_dict()
        return True

    def y_sign():
        for A in algs:
            for p in range(4):
                if not shiftmap.y_sign_check(p, samples, A, seed):
                    return False, {"R": A.name, "p": p}
        return True

    def psi_suite():
        rng = random.Random(seed)
        for A in algs:
            for fam in jmat.FAMILY_TAU:
                for _ in range(max(1, samples // 5)):
                    X, Y, Z = (cocycle.random_fixed(A, fam, rng, shifts=1) for _ in range(3))
                    if not cocycle.cocycle_identity(X, Y, Z):
                        return False, {"R": A.name, "family": fam, "X": repr(X), "Y": repr(Y), "Z": repr(Z)}
                    if not cocycle.extended_jacobi(X, Y, Z, fam):
                        return False, {"R": A.name, "family": fam, "jacobi": True}
        return True

    def kernel_suite():
        for A in algs:
            for fam in ("sp", "o_even"):
                hit = cocycle.kernel_counterexample(fam, samples, A, seed, shifts=1)
                if hit:
                    return False, {"R": A.name, "family": fam, "X": repr(hit[0]), "Y": repr(hit[1])}
            if not cocycle.odd_coboundary_check(samples, A, seed, shifts=1):
                return False, {"R": A.name, "family": "o_odd"}
        return True

    def japanese():
        rng = random.Random(seed)
        for A in algs:
            for _ in range(samples):
                X, Y = jmat.random_jmat(A, rng), jmat.random_jmat(A, rng)
                if cocycle.psi(X, Y) != cocycle.japanese_cocycle(X, Y):
                    return False, {"R": A.name, "X": repr(X), "Y": repr(Y)}
        return True

    def fermions():
        F = fock.FockSpace(3)
        rng = random.Random(seed)
        for _ in range(samples):
            a, b = fock.random_window_matrix(3, rng), fock.random_window_matrix(3, rng)
            if not fock.bracket_formula_check(a, b, space=F):
                return False, {"a": repr(a), "b": repr(b)}
        return True

    def shift_identities():
        rng = random.Random(seed)
        for A in algs:
            for _ in range(samples):
                X = jmat.random_jmat(A, rng, shifts=1)
                for l in range(-2, 3):
                    if not jmat.shift_conjugation_check(l, X):
                        return False, {"R": A.name, "l": l, "X": repr(X)}
        return True

    def stabilizer():
        for n in (2, 3, 4):
            r = dihedral.hyperoctahedral_stabilizer(n)
            if not (r.is_dihedral and r.generators_in_stabilizer):
                return False, json.loads(r.to_json())
        return all(dihedral.induced_action_check(n) for n in range(1, 6))

    out.append(_suite("ftiso.restriction", "restrictions of Phi_I land in (g(J(R)), *)", restriction))
    out.append(_suite("ftiso.brackets", "Phi_I is a Lie algebra map", brackets))
    out.append(_suite("shiftmap.y_sign", "y o Phi_p = -Phi_p o y", y_sign))
    out.append(_suite("cocycle.identity", "Psi is a 2-cocycle; [X,Y]' satisfies Jacobi", psi_suite))
    out.append(_suite("cocycle.kernel", "central values in (R^ab)_1 (o_odd: up to a coboundary)", kernel_suite))
    out.append(_suite("cocycle.japanese", "Japanese cocycle equals Psi on finite support", japanese))
    out.append(_suite("fock.bracket", "[rho a, rho b] = rho[a,b] + c(a,b) 1", fermions))
    out.append(_suite("jmat.shift", "tN N = I, N^-1 J_l N = -J_{l+2}, N^-1 tau_l(X) N = tau_{l+2}(Ad(N) X)",
                      shift_identities))
    out.append(_suite("dihedral.stabilizer", "Stab_{H_n}(kappa) is dihedral of order 2n", stabilizer))
    return out


def cmd_verify(args) -> tuple[dict, int]:
    suites = verify_suites(args.seed, args.samples, args.R)
    statuses = {s["status"] for s in suites}
    code = EXIT_INTERNAL if "internal-error" in statuses else (EXIT_FAIL if "fail" in statuses else EXIT_OK)
    first = next((s for s in suites if s["status"] != "pass"), None)
    return {"seed": args.seed, "samples": args.samples, "suites": suites, "first_failure": first}, code


def cmd_cocycle(args) -> tuple[dict, int]:
    A = resolve_algebra(args.R)
    rng = random.Random(args.seed)
    failures = []
    for _ in range(args.samples):
        X, Y, Z = (cocycle.random_fixed(A, args.family, rng, shifts=1) for _ in range(3))
        if not cocycle.cocycle_identity(X, Y, Z):
            failures.append({"check": "cocycle", "X": repr(X), "Y": repr(Y), "Z": repr(Z)})
        if not cocycle.extended_jacobi(X, Y, Z, args.family):
            failures.append({"check": "jacobi", "X": repr(X), "Y": repr(Y), "Z": repr(Z)})
        Xf, Yf = jmat.random_jmat(A, rng), jmat.random_jmat(A, rng)
        if cocycle.psi(Xf, Yf) != cocycle.japanese_cocycle(Xf, Yf):
            failures.append({"check": "japanese", "X": repr(Xf), "Y": repr(Yf)})
    hit = cocycle.kernel_counterexample(args.family, args.samples, A, args.seed, shifts=1)
    kernel = {"values_in_fixed_part": hit is None}
    if hit:
        kernel["counterexample"] = {"X": repr(hit[0]), "Y": repr(hit[1]), "psi": [str(c) for c in hit[2]]}
        if args.family == "o_odd":
            kernel["minus_part_is_coboundary"] = cocycle.odd_coboundary_check(args.samples, A, args.seed, shifts=1)
    out = {"R": A.name, "family": args.family, "samples": args.samples, "failures": failures[:5],
           "kernel": kernel, "claims": ["It can be checked that this is a 2-cocycle.", "[X,Y]'=[X,Y]+Psi(X,Y)"]}
    return out, EXIT_FAIL if failures else EXIT_OK


def cmd_fock(args) -> tuple[dict, int]:
    F = fock.FockSpace(args.m)
    rng = random.Random(args.seed)
    k = catalog("k")
    worked = fock.bracket_defect(F, jmat.JMat.unit(k, 0, -1), jmat.JMat.unit(k, -1, 0))
    bad = []
    for _ in range(args.samples):
        a, b = fock.random_window_matrix(args.m, rng), fock.random_window_matrix(args.m, rng)
        if not fock.bracket_formula_check(a, b, space=F):
            bad.append({"a": repr(a), "b": repr(b)})
    out = {"m": args.m, "dim": F.dim, "samples": args.samples, "worked_central_term": str(worked),
           "clifford_ok": F.clifford_relations() if args.m <= 3 else None, "failures": bad[:5]}
    return out, EXIT_FAIL if bad or worked != -1 else EXIT_OK


def cmd_algebra_validate(args) -> tuple[dict, int]:
    try:
        A = resolve_algebra(args.R)
    except AxiomViolation as exc:
        return {"R": args.R, "valid": False, "violation": exc.kind, "where": list(exc.where), "message": str(exc)}, EXIT_FAIL
    ab = A.abelianization
    plus, minus = A.eigen_split
    return {"R": A.name, "valid": True, "dim": A.dim, "commutative": A.is_commutative,
            "R_plus": len(plus), "R_minus": len(minus), "R_ab": ab.dim, "R_ab_fixed": len(ab.fixed_basis)}, EXIT_OK


COMMANDS = {
    "betti": cmd_betti,
    "dihedral": cmd_dihedral,
    "stable-scan": cmd_stable_scan,
    "verify": cmd_verify,
    "cocycle": cmd_cocycle,
    "fock": cmd_fock,
    "algebra-validate": cmd_algebra_validate,
}


def run(argv=None) -> tuple[dict, int]:
    args = parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except (cecomplex.BudgetExceeded, dihedral.BudgetExceeded) as exc:
        report, code = {"error": "budget", "detail": str(exc)}, EXIT_BUDGET
    except (cocycle.InternalMismatch, cecomplex.ModularDisagreement, AssertionError) as exc:
        report, code = {"error": "internal", "detail": str(exc)}, EXIT_INTERNAL
    report = {"command": args.command, **report, "exit_code": code}
    text = json.dumps(report, indent=2, default=str)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return report, code


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
