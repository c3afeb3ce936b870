"""Command-line entry point: seeded experiments with JSON/CSV reports.

Exit codes: 0 success, 1 usage error, 2 when any reported step carries a
FAIL verdict.  All randomness flows from ``--seed``; repeated runs with
identical flags produce byte-identical JSON payloads.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__, chains, quadric, reports, tensors
from .hypersurface import (
    canonicalize_conjugation,
    classify_normal,
    closed_form_cos2t,
    induce_frame,
    shape_random,
    shape_random_hopf,
)

PASS = chains.PASS
FAIL = chains.FAIL

_COMMANDS = (
    "model",
    "classify",
    "check-identities",
    "star-ricci",
    "soliton",
    "chain",
    "search",
)

_CHAINS = {
    "commuting": chains.run_commuting_chain,
    "parallel": chains.run_parallel_chain,
    "soliton": chains.run_soliton_chain,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qhlab",
        description="Seeded numerical experiments on hypersurface tensor "
                    "algebra over a quadric tangent-space model.",
    )
    parser.add_argument("command", choices=_COMMANDS)
    parser.add_argument(
        "target", nargs="?", default=None,
        help="chain name for the `chain` command: commuting | parallel | soliton",
    )
    parser.add_argument("--m", type=int, default=3, help="complex dimension (>= 3)")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--restarts", type=int, default=100)
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--out", default=None, help="output file path")
    parser.add_argument("--format", dest="fmt", choices=["json", "csv"],
                        default="json")
    parser.add_argument(
        "--constraints", default="hopf-relation",
        help="comma-separated constraint names for the `search` command",
    )
    return parser


def _verdict(value: float, tolerance: float) -> dict:
    return {
        "value": float(value),
        "tolerance": float(tolerance),
        "verdict": PASS if value <= tolerance else FAIL,
    }


def _random_normal(m: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng((1001, seed))
    n = rng.standard_normal(2 * m)
    return n / np.linalg.norm(n)


def _cmd_model(args) -> dict:
    model = quadric.build_model(args.m, seed=args.seed)
    invariants = quadric.model_invariant_report(model)
    worst = max(v for k, v in invariants.items() if k != "m")
    return {"invariants": invariants, "worst": _verdict(worst, args.tol)}


def _cmd_classify(args) -> dict:
    model = quadric.build_model(args.m, seed=args.seed)
    n = _random_normal(args.m, args.seed)
    frame = induce_frame(model, n)
    gauge = canonicalize_conjugation(model, n)
    kind = classify_normal(gauge)
    an = gauge.A @ frame.N
    cos2t_gap = abs(closed_form_cos2t(model, n) - float(np.cos(2.0 * gauge.t)))
    return {
        "m": args.m,
        "kind": kind.kind,
        "t": float(gauge.t),
        "theta_star": float(gauge.theta_star),
        "normal_pairing_with_reeb": _verdict(abs(float(an @ frame.xi)), args.tol),
        "cos2t_closed_form_gap": _verdict(cos2t_gap, args.tol),
    }


def _cmd_check_identities(args) -> dict:
    model = quadric.build_model(args.m, seed=args.seed)
    frame_defect = 0.0
    gauge_defect = 0.0
    helper_defect = 0.0
    curvature_defect = 0.0
    corrected_gap = 0.0
    raw_gap = 0.0
    rng = np.random.default_rng((1002, args.seed))
    for k in range(5):
        n = rng.standard_normal(2 * args.m)
        n /= np.linalg.norm(n)
        frame = induce_frame(model, n)
        gauge = canonicalize_conjugation(model, n)
        xi, phi, P = frame.xi, frame.phi, frame.P

        d = tensors.sup_norm_tangent(frame, phi @ phi + P - np.outer(xi, xi))
        d = max(d, float(np.linalg.norm(phi @ xi)))
        d = max(d, abs(float(frame.eta(xi)) - 1.0))
        d = max(d, tensors.sup_norm_tangent(
            frame, phi.T @ phi - P + np.outer(xi, xi)))
        frame_defect = max(frame_defect, d)

        an = gauge.A @ frame.N
        axi = gauge.A @ frame.xi
        g = max(
            abs(float(an @ xi)),
            abs(float(an @ frame.N) + float(axi @ xi)),
            float(np.linalg.norm(
                frame.N
                - np.cos(gauge.t) * gauge.Z1
                - np.sin(gauge.t) * (model.J @ gauge.Z2)
            )),
        )
        gauge_defect = max(gauge_defect, g)

        helper_defect = max(
            helper_defect,
            *tensors.helper_identity_defects(frame, gauge.A_star).values(),
        )

        shape = shape_random(frame, seed=(args.seed, k))
        R = tensors.curvature(frame, shape, gauge.A_star)
        for _ in range(4):
            x, y, z, w = (frame.project(rng.standard_normal(2 * args.m))
                          for _ in range(4))
            curvature_defect = max(
                curvature_defect,
                float(np.linalg.norm(R(x, y, z) + R(y, x, z))),
                float(np.linalg.norm(R(x, y, z) + R(y, z, x) + R(z, x, y))),
                abs(float(R(x, y, z) @ w) - float(R(z, w, x) @ y)),
            )

        trace = tensors.star_ricci_trace(frame, shape, gauge.A_star).matrix
        closed = tensors.star_ricci_closed(frame, shape, gauge.A_star).matrix
        defect = tensors.star_ricci_closed_defect(frame, gauge.A_star).matrix
        raw_gap = max(raw_gap, tensors.sup_norm_tangent(frame, trace - closed))
        corrected_gap = max(
            corrected_gap,
            tensors.sup_norm_tangent(frame, trace - closed - defect),
        )

    return {
        "m": args.m,
        "almost_contact": _verdict(frame_defect, args.tol),
        "gauge": _verdict(gauge_defect, args.tol),
        "helper_identities": _verdict(helper_defect, args.tol),
        "curvature": _verdict(curvature_defect, args.tol),
        "star_ricci_trace_vs_closed_plus_defect": _verdict(corrected_gap, args.tol),
        "star_ricci_trace_vs_closed_gap": raw_gap,
    }


def _cmd_star_ricci(args) -> dict:
    model = quadric.build_model(args.m, seed=args.seed)
    n = _random_normal(args.m, args.seed)
    frame = induce_frame(model, n)
    gauge = canonicalize_conjugation(model, n)
    shape = shape_random_hopf(frame, alpha=0.5, seed=(1004, args.seed))
    trace = tensors.star_ricci_trace(frame, shape, gauge.A_star)
    closed = tensors.star_ricci_closed(frame, shape, gauge.A_star)
    defect = tensors.star_ricci_closed_defect(frame, gauge.A_star)
    commutators = tensors.commutator_residuals(closed, frame)
    ric_xi = float(np.linalg.norm(frame.P @ closed.matrix @ frame.xi))
    return {
        "m": args.m,
        "kind": classify_normal(gauge).kind,
        "closed_symmetry_defect": float(closed.sym_defect),
        "trace_vs_closed_gap": tensors.sup_norm_tangent(
            frame, trace.matrix - closed.matrix),
        "trace_vs_closed_plus_defect": _verdict(
            tensors.sup_norm_tangent(
                frame, trace.matrix - closed.matrix - defect.matrix),
            args.tol,
        ),
        "reeb_direction_norm": _verdict(ric_xi, args.tol),
        "commuting": commutators["commuting"],
        "anticommuting": commutators["anticommuting"],
    }


def _cmd_soliton(args) -> dict:
    model = quadric.build_model(args.m, seed=args.seed)
    n = _random_normal(args.m, args.seed)
    frame = induce_frame(model, n)
    gauge = canonicalize_conjugation(model, n)
    rng = np.random.default_rng((1003, args.seed))
    lam = float(rng.uniform(-2.0, 2.0))
    shape = shape_random_hopf(frame, alpha=float(rng.uniform(-3.0, 3.0)),
                              seed=(1004, args.seed))
    report = tensors.soliton_residual(frame, shape, gauge.A_star, lam)
    forcing = abs(report.breakdown["xi_xi"] - abs(lam))
    return {
        "m": args.m,
        "lambda": lam,
        "residual": reports.payload_of(report),
        "lambda_forcing": _verdict(forcing, 1e-12),
    }


def _cmd_chain(args, parser) -> dict:
    if args.target not in _CHAINS:
        parser.error(
            f"chain requires a target in {sorted(_CHAINS)}, got {args.target!r}"
        )
    cfg = chains.ChainConfig(restarts=args.restarts, seed=args.seed,
                             tol=args.tol)
    return reports.payload_of(_CHAINS[args.target](args.m, cfg))


def _cmd_search(args, parser) -> dict:
    registry = {
        "hopf-relation": chains.hopf_relation_constraint,
        "commuting-star-ricci": chains.commuting_constraint,
        "soliton": chains.soliton_constraint,
        "parallel-star-ricci": chains.parallel_constraint,
    }
    names = [n.strip() for n in args.constraints.split(",") if n.strip()]
    unknown = [n for n in names if n not in registry]
    if not names or unknown:
        parser.error(
            f"unknown constraints {unknown}; available: {sorted(registry)}"
        )
    cs = chains.ConstraintSet(tuple(registry[n]() for n in names))
    cfg = chains.ChainConfig(restarts=args.restarts, seed=args.seed,
                             tol=args.tol)
    if "parallel-star-ricci" in names:
        parameterize = lambda x: chains.parallel_state(args.m, x)  # noqa: E731
        sampler = chains.parallel_sampler(args.m)
    elif names == ["soliton"]:
        parameterize = lambda x: chains.soliton_state(args.m, x)  # noqa: E731
        sampler = chains.soliton_sampler(args.m)
    else:
        parameterize = None
        sampler = None
    search = chains.infeasibility_search(
        cs, args.m, cfg, parameterize=parameterize, sampler=sampler
    )
    return {"constraints": names, "search": reports.payload_of(search)}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {
        "command": args.command,
        "target": args.target,
        "m": args.m,
        "seed": args.seed,
        "restarts": args.restarts,
        "tol": args.tol,
        "format": args.fmt,
    }
    try:
        if args.command == "model":
            payload = _cmd_model(args)
        elif args.command == "classify":
            payload = _cmd_classify(args)
        elif args.command == "check-identities":
            payload = _cmd_check_identities(args)
        elif args.command == "star-ricci":
            payload = _cmd_star_ricci(args)
        elif args.command == "soliton":
            payload = _cmd_soliton(args)
        elif args.command == "chain":
            payload = _cmd_chain(args, parser)
        else:
            payload = _cmd_search(args, parser)
    except ValueError as exc:
        print(f"qhlab: error: {exc}", file=sys.stderr)
        return 1

    envelope = reports.make_envelope(__version__, config, payload)
    body = reports.emit_report(envelope, args.fmt)
    if args.out:
        with open(args.out, "wb") as handle:
            handle.write(body)
    else:
        sys.stdout.write(body.decode("utf-8"))
    return 2 if reports.has_failure(envelope) else 0


if __name__ == "__main__":
    sys.exit(main())
