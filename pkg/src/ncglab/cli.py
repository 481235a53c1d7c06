"""Command-line pipeline: generate instances, verify embeddings, certify
reductions, decode fields, lift little operators, and solve lifted forms.

Every command writes a machine-readable JSON report (even on failure) and
exits 0 exactly when all of its checks pass. All randomness flows through
explicit --seed flags; rerunning a command with the same seed reproduces
its output files byte for byte. There is no environment-variable
configuration.
"""

from __future__ import annotations

import argparse
import sys
import math

import numpy as np

from . import clifford, commutative, fileio, labelcover, reduction, solvers
from .config import (DEFAULT_EPS, DEFAULT_ITERS, DEFAULT_RESTARTS, DEFAULT_TOL,
                     FORMAT_VERSION)


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _comma_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _comma_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part]


def _build_backend(name: str, n: int, mode: str, seed, samples):
    if name not in reduction.BACKEND_BUILDERS:
        raise ValueError(f"unknown backend {name!r}")
    builder = reduction.BACKEND_BUILDERS[name]
    if mode == "monte_carlo":
        return builder(n, mode, seed=seed, sample_count=samples)
    return builder(n, mode)


# ---------------------------------------------------------------------------
# Command handlers: each returns (report dict, passed bool)


def _cmd_gen_labelcover(args):
    if args.k * args.t < args.n:
        raise ValueError("infeasible parameters: need k*t >= n")
    if args.mode == "planted":
        inst, planted = labelcover.generate_planted(
            args.vertices, args.degree, args.n, args.k, args.t,
            seed=args.seed, zeta=args.zeta)
    else:
        inst = labelcover.generate_random(
            args.vertices, args.degree, args.n, args.k, args.t,
            seed=args.seed, zeta=args.zeta)
        planted = None
    fileio.save_instance(inst, args.out)
    if planted is not None and args.planted_out:
        fileio.save_assignment(planted, args.planted_out)
    checks = {
        "regular": inst.is_regular(),
        "connected": inst.is_connected(),
        "preimage_bound": inst.max_preimage_size() <= inst.t,
        "smoothness_ok": labelcover.check_smoothness(inst) <= inst.gamma,
    }
    if planted is not None:
        checks["planted_satisfies_all"] = labelcover.satisfied_fraction(inst, planted) == 1.0
    passed = all(checks.values())
    report = {
        "command": "gen-labelcover",
        "params": {"vertices": args.vertices, "degree": args.degree, "n": args.n,
                   "k": args.k, "t": args.t, "zeta": args.zeta, "seed": args.seed,
                   "mode": args.mode},
        "instance_file": args.out,
        "smoothness": labelcover.check_smoothness(inst),
        "num_edges": inst.num_edges,
        "checks": checks,
        "pass": passed,
    }
    print(f"wrote {args.out}: |V|={inst.num_vertices} |E|={inst.num_edges} "
          f"smoothness={report['smoothness']:.4f} t={inst.t} regular={checks['regular']}")
    return report, passed


def _cmd_check_instance(args):
    inst = fileio.load_instance(args.instance)
    checks = {
        "regular": inst.is_regular(),
        "connected": inst.is_connected(),
        "preimage_bound": inst.max_preimage_size() <= inst.t,
    }
    smoothness = labelcover.check_smoothness(inst)
    checks["smoothness_ok"] = smoothness <= inst.gamma
    expansion = labelcover.check_weak_expansion(
        inst, args.deltas, subset_samples=args.subset_samples, seed=args.seed)
    checks["weak_expansion"] = all(row.passed for row in expansion)
    report = {
        "command": "check-instance",
        "params": {"instance": args.instance, "deltas": args.deltas,
                   "subset_samples": args.subset_samples, "seed": args.seed},
        "smoothness": smoothness,
        "declared_gamma": inst.gamma,
        "expansion": [vars(row) for row in expansion],
        "checks": checks,
    }
    if args.assignment:
        labels = fileio.load_assignment(args.assignment)
        report["satisfied_fraction"] = labelcover.satisfied_fraction(inst, labels)
    passed = all(checks.values())
    report["pass"] = passed
    for name, ok in checks.items():
        print(f"  {name}: {'PASS' if ok else 'FAIL'}")
    return report, passed


def _cmd_reduce(args):
    inst = fileio.load_instance(args.instance)
    labels = fileio.load_assignment(args.assignment)
    backend = _build_backend(args.backend, inst.n, args.mode, args.seed, args.samples)
    cert = reduction.completeness_certificate(inst, labels, backend)
    report = {
        "command": "reduce",
        "params": {"instance": args.instance, "assignment": args.assignment,
                   "backend": args.backend, "mode": args.mode, "seed": args.seed},
        "in_subspace": cert.in_subspace,
        "residual": cert.residual,
        "value": cert.value,
        "eta": backend.eta,
        "pass": cert.passed,
    }
    print(f"certificate: in_subspace={cert.in_subspace} value={cert.value:.8f} "
          f"(eta={backend.eta}) -> {'PASS' if cert.passed else 'FAIL'}")
    return report, cert.passed


def _cmd_decode(args):
    inst = fileio.load_instance(args.instance)
    fld = fileio.load_field(args.field)
    # default spread threshold sqrt(2)*eps, saturated at the decoder's ceiling
    delta = args.delta if args.delta is not None else min(math.sqrt(2.0) * args.eps, 1.0)
    params = reduction.DecoderParams(eps=args.eps, delta=delta, t=inst.t, seed=args.seed)
    labels, stats = reduction.decode(fld, params, inst)
    if args.assignment_out:
        fileio.save_assignment(labels, args.assignment_out)
    checks = {
        "a1_within_bound": all(s <= stats.a1_bound for s in stats.a1_sizes),
        "a2_within_bound": all(s <= stats.a2_bound for s in stats.a2_sizes),
    }
    passed = all(checks.values())
    report = {
        "command": "decode",
        "params": {"instance": args.instance, "field": args.field, "eps": args.eps,
                   "delta": delta, "seed": args.seed},
        "stats": {
            "v0_size": stats.v0_size,
            "v0_fraction": stats.v0_fraction,
            "beta": stats.beta,
            "a1_sizes": stats.a1_sizes,
            "a2_sizes": stats.a2_sizes,
            "a1_bound": stats.a1_bound,
            "a2_bound": stats.a2_bound,
            "satisfied_fraction": stats.satisfied_fraction,
        },
        "checks": checks,
        "pass": passed,
    }
    print(f"decoded: |V0|/|V|={stats.v0_fraction:.3f} satisfied={stats.satisfied_fraction:.4f}")
    return report, passed


def _cmd_embed_verify(args):
    n = args.n
    rng = np.random.default_rng(args.seed)
    rows = []

    gens = clifford.make_generators(n)
    suite_ok = True
    eye = np.eye(gens.dim)
    for idx, c in enumerate(gens.matrices):
        suite_ok &= bool(np.array_equal(c, c.conj().T))
        suite_ok &= bool(np.array_equal(c @ c, eye))
        suite_ok &= c.trace() == 0
        for other in gens.matrices[idx + 1:]:
            suite_ok &= not np.any(c @ other + other @ c)
    rows.append(["generator_suite", n, "exact", 0.0, 0.0, suite_ok])

    family = clifford.build_phase_family(n, args.mode, seed=args.seed,
                                         sample_count=args.samples)
    exact = family.mode != "monte_carlo"

    formula_err = 0.0
    for _ in range(args.trials):
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        formula_err = max(formula_err, abs(
            clifford.trace_norm_formula(a)
            - np.linalg.svd(clifford.clifford_map(a, gens), compute_uv=False).sum() / gens.dim))
    formula_ok = formula_err <= 1e-8
    rows.append(["formula_vs_svd", n, f"{args.trials} trials", formula_err, 1e-8, formula_ok])

    basis_err = 0.0
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        est = clifford.dictator_embedding_norm(e, family)
        basis_err = max(basis_err, abs(est.value - 1.0))
    basis_ok = basis_err <= (1e-10 if exact else 1e-8)
    rows.append(["basis_norm_one", n, family.mode, basis_err, 1e-10, basis_ok])

    bound_ok = True
    bound_worst = -np.inf
    for _ in range(args.trials):
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        est = clifford.dictator_embedding_norm(a, family)
        slack = 1e-8 + (3.0 * est.stderr if not exact else 0.0)
        excess = est.value - clifford.embedding_norm_bound(a)
        bound_worst = max(bound_worst, excess)
        bound_ok &= excess <= slack
    rows.append(["norm_bound", n, family.mode, bound_worst, 0.0, bound_ok])

    moment_ok = True
    moment_err = 0.0
    if exact:
        for _ in range(args.trials):
            a = rng.normal(size=n) + 1j * rng.normal(size=n)
            a = a / np.linalg.norm(a)
            lhs = clifford.randphase_second_moment(a, family)
            rhs = float(np.sum(np.abs(a)**2)**2 - np.sum(np.abs(a)**4))
            moment_err = max(moment_err, abs(lhs - rhs))
        moment_ok = moment_err <= 1e-10
        rows.append(["second_moment", n, family.mode, moment_err, 1e-10, moment_ok])

    passed = all(bool(r[5]) for r in rows)
    if args.csv:
        fileio.write_csv(args.csv, ["check", "n", "detail", "value", "bound", "pass"], rows)
    report = {
        "command": "embed-verify",
        "params": {"n": n, "mode": args.mode, "samples": args.samples,
                   "trials": args.trials, "seed": args.seed},
        "rows": [[str(x) for x in row] for row in rows],
        "pass": passed,
    }
    for row in rows:
        print(f"  {row[0]}: {'PASS' if row[5] else 'FAIL'}")
    return report, passed


def _cmd_comm_verify(args):
    rows = commutative.berry_esseen_profile(
        args.n_list, args.field, mode=args.mode,
        sample_count=args.samples, seed=args.seed)
    limit = commutative.REAL_LIMIT if args.field == "real" else commutative.COMPLEX_LIMIT
    monotone = all(
        rows[i + 1].gap <= rows[i].gap + 3.0 * (rows[i].stderr + rows[i + 1].stderr) + 1e-12
        for i in range(len(rows) - 1))
    if args.csv:
        fileio.write_csv(args.csv, ["n", "spread", "value", "stderr", "gap"],
                         [[r.n, r.spread, r.value, r.stderr, r.gap] for r in rows])
    report = {
        "command": "comm-verify",
        "params": {"field": args.field, "n_list": args.n_list, "mode": args.mode,
                   "samples": args.samples, "seed": args.seed},
        "limit": limit,
        "rows": [vars(r) for r in rows],
        "gap_monotone": monotone,
        "pass": monotone,
    }
    for r in rows:
        print(f"  n={r.n}: value={r.value:.6f} gap={r.gap:.6f}")
    print(f"  gap shrinkage: {'PASS' if monotone else 'FAIL'}")
    return report, monotone


def _cmd_lift(args):
    if args.backend == "clifford":
        op = solvers.little_op_from_clifford(args.n)
    else:
        fld = "real" if args.backend == "comm_real" else "complex"
        ens = commutative.SignEnsemble(field=fld, n=args.n, mode="exhaustive")
        op = solvers.little_op_from_comm(ens)
    tensor = solvers.lift_little_to_big(op)
    fileio.save_tensor(tensor, args.out)
    report = {
        "command": "lift",
        "params": {"backend": args.backend, "n": args.n},
        "d": tensor.d,
        "nnz": tensor.nnz,
        "tensor_file": args.out,
        "pass": True,
    }
    print(f"lifted {args.backend} n={args.n} -> d={tensor.d}, {tensor.nnz} entries")
    return report, True


def _cmd_solve_ncg(args):
    tensor = fileio.load_tensor(args.tensor)
    result = solvers.ncg_opt_lower_bound(tensor, restarts=args.restarts,
                                         iters=args.iters, tol=args.tol, seed=args.seed)
    monotone = all(
        all(h[i + 1] >= h[i] - 1e-9 for i in range(len(h) - 1))
        for h in result.histories)
    unitary_ok = (result.unitarity_residual_a <= 1e-9
                  and result.unitarity_residual_b <= 1e-9)
    passed = monotone and unitary_ok
    report = {
        "command": "solve-ncg",
        "params": {"tensor": args.tensor, "restarts": args.restarts,
                   "iters": args.iters, "tol": args.tol, "seed": args.seed},
        "value": result.value,
        "unitarity_residuals": [result.unitarity_residual_a, result.unitarity_residual_b],
        "monotone": monotone,
        "pass": passed,
    }
    if args.out:
        fileio.dump_json({
            "version": FORMAT_VERSION,
            "value": result.value,
            "a": [[[float(z.real), float(z.imag)] for z in row] for row in result.a],
            "b": [[[float(z.real), float(z.imag)] for z in row] for row in result.b],
        }, args.out)
    print(f"opt lower bound: {result.value:.8f} "
          f"(unitarity residuals {result.unitarity_residual_a:.2e}, "
          f"{result.unitarity_residual_b:.2e})")
    return report, passed


def _cmd_report(args):
    rows = []
    all_pass = True
    for path in args.inputs:
        doc = fileio.load_json(path)
        ok = bool(doc.get("pass", False))
        rows.append([path, doc.get("command", "?"), ok])
        all_pass &= ok
    if args.csv:
        fileio.write_csv(args.csv, ["file", "command", "pass"], rows)
    report = {
        "command": "report",
        "params": {"inputs": list(args.inputs)},
        "rows": [[str(x) for x in row] for row in rows],
        "pass": all_pass,
    }
    for path, command, ok in rows:
        print(f"  {command} ({path}): {'PASS' if ok else 'FAIL'}")
    return report, all_pass


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncglab",
        description="Verification pipeline for trace-norm embedding gadgets and "
                    "label-cover norm reductions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", default=None,
                        help="path for the JSON report (default <command>.report.json)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("gen-labelcover", help="generate a synthetic instance")
    p.add_argument("--vertices", type=_positive_int, required=True)
    p.add_argument("--degree", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--zeta", type=_positive_float, default=0.1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=["planted", "random"], default="planted")
    p.add_argument("--out", required=True)
    p.add_argument("--planted-out", default=None)
    p.set_defaults(handler=_cmd_gen_labelcover)

    p = add_parser("check-instance", help="structural checks on an instance file")
    p.add_argument("--instance", required=True)
    p.add_argument("--assignment", default=None)
    p.add_argument("--deltas", type=_comma_floats, default=[0.25, 0.5])
    p.add_argument("--subset-samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_check_instance)

    p = add_parser("reduce", help="completeness certificate for an assignment")
    p.add_argument("--instance", required=True)
    p.add_argument("--assignment", required=True)
    p.add_argument("--backend", choices=sorted(reduction.BACKEND_BUILDERS), required=True)
    p.add_argument("--mode", choices=["exhaustive", "pairwise_independent", "monte_carlo"],
                   default="exhaustive")
    p.add_argument("--samples", type=_positive_int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_reduce)

    p = add_parser("decode", help="decode a field into an assignment")
    p.add_argument("--instance", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--eps", type=_positive_float, default=DEFAULT_EPS)
    p.add_argument("--delta", type=_positive_float, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--assignment-out", default=None)
    p.set_defaults(handler=_cmd_decode)

    p = add_parser("embed-verify", help="verify the matrix embedding invariants")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "pairwise_independent", "monte_carlo"],
                   default="exhaustive")
    p.add_argument("--samples", type=_positive_int, default=None)
    p.add_argument("--trials", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", default=None)
    p.set_defaults(handler=_cmd_embed_verify)

    p = add_parser("comm-verify", help="scalar embedding limit profile")
    p.add_argument("--field", choices=["real", "complex"], required=True)
    p.add_argument("--n-list", type=_comma_ints, required=True)
    p.add_argument("--mode", choices=["auto", "exhaustive"], default="auto")
    p.add_argument("--samples", type=_positive_int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", default=None)
    p.set_defaults(handler=_cmd_comm_verify)

    p = add_parser("lift", help="materialize a little operator and lift it")
    p.add_argument("--backend", choices=["clifford", "comm_real", "comm_complex"],
                   required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_lift)

    p = add_parser("solve-ncg", help="alternating maximization over unitary pairs")
    p.add_argument("--tensor", required=True)
    p.add_argument("--restarts", type=_positive_int, default=DEFAULT_RESTARTS)
    p.add_argument("--iters", type=_positive_int, default=DEFAULT_ITERS)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_solve_ncg)

    p = add_parser("report", help="aggregate command reports into a summary")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--csv", default=None)
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report_path = args.report or f"{args.command}.report.json"
    try:
        report, passed = args.handler(args)
    except (ValueError, OSError, reduction.DecodeInvariantError) as exc:
        fileio.save_report({"command": args.command, "error": str(exc), "pass": False},
                           report_path)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fileio.save_report(report, report_path)
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
