"""Command-line surface.

Subcommands: verify-paper, find-zero, eval, lift, sample, grid.
Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical failure.  Outputs are deterministic for fixed seeds.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import exactfield, kernel, zerofind
from .errors import SymdiscError
from .zerofind import LiftConfig, ZeroCertificate

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass
class RunConfig:
    seed: int = 0
    out: str | None = None
    fmt: str = "text"
    tol_dim3: float = zerofind.DEFAULT_TOL_DIM3
    tol_lift: float = zerofind.DEFAULT_TOL_LIFT
    workers: int = 1


def parse_complex(text: str) -> complex:
    """Parse 're,im' into a complex number."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex literal {text!r}") from exc


def _write_output(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _fmt_complex(c: complex) -> str:
    return f"{c.real:+.17g}{c.imag:+.17g}j"


# --- verify-paper -------------------------------------------------------------


def cmd_verify_paper(args, cfg: RunConfig) -> int:
    reports = [
        exactfield.verify_base_point_identities(fault=args.fault_inject),
        exactfield.verify_bracket_identities(),
    ]
    numeric = exactfield.VerificationReport("numeric cross-checks")
    closed = kernel.closed_form_comparison(samples=args.samples, seed=cfg.seed)
    numeric.add(
        "closed-form-vs-determinant",
        f"dimension-3 closed form matches the determinant route at {closed['samples']} points (1e-9 relative)",
        closed["max_rel_diff"] < 1e-9,
        detail=f"max relative difference {closed['max_rel_diff']:.3e}",
    )
    chain = kernel.reduction_chain_check(samples=max(50, args.samples // 5), seed=cfg.seed + 1)
    numeric.add(
        "reduction-chain",
        f"all stages of the two-column reduction agree at {chain['samples']} points (1e-9 relative)",
        chain["max_rel_diff"] < 1e-9,
        detail=f"max relative difference {chain['max_rel_diff']:.3e}",
    )
    a_ex, b_ex, c_ex = exactfield.exact_base_quadratic()
    q = kernel.abc_coeffs(zerofind.TORUS_BASE)
    worst = max(
        abs(complex(a_ex) - q.a) / abs(q.a),
        abs(complex(b_ex) - q.b) / abs(q.b),
        abs(complex(c_ex) - q.c) / abs(q.c),
    )
    numeric.add(
        "exact-vs-float-abc",
        "float quadratic coefficients at the base triple match their exact values (1e-14 relative)",
        worst < 1e-14,
        detail=f"max relative difference {worst:.3e}",
    )
    cert = zerofind.construct_zero_dim3(seed=cfg.seed)
    moments = zerofind.moment_identity_check(cert.lam, cert.mu)
    numeric.add(
        "slice-moment-identity",
        "Taylor data of the first-slot slice matches the moment determinants "
        "(second row over all three conjugated mu coordinates; the "
        "repeated-column variant of that display is rejected)",
        moments["max_rel_diff"] < 1e-9,
        detail=f"max relative difference {moments['max_rel_diff']:.3e}",
    )
    reports.append(numeric)

    all_passed = all(r.passed for r in reports)
    if cfg.fmt == "json":
        payload = {
            "passed": all_passed,
            "reports": [r.to_dict() for r in reports],
        }
        _write_output(cfg, json.dumps(payload, indent=2, sort_keys=True))
    else:
        blocks = [r.to_text() for r in reports]
        total = sum(len(r.checks) for r in reports)
        failed = sum(len(r.failures()) for r in reports)
        blocks.append(f"# {total - failed}/{total} checks passed")
        _write_output(cfg, "\n\n".join(blocks))
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


# --- find-zero / lift ----------------------------------------------------------


def _lift_config(args) -> LiftConfig:
    kwargs = {}
    if getattr(args, "disc_radius", None) is not None:
        kwargs["disc_radius"] = args.disc_radius
    if getattr(args, "append_step", None) is not None:
        kwargs["append_modulus_step"] = args.append_step
    if getattr(args, "max_retries", None) is not None:
        kwargs["max_retries"] = args.max_retries
    return LiftConfig(**kwargs)


def _emit_certificate(cert: ZeroCertificate, cfg: RunConfig) -> None:
    text = json.dumps(cert.to_dict(), indent=2, sort_keys=True)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    chain = []
    node = cert
    while node is not None:
        chain.append(node)
        node = node.parent
    for node in reversed(chain):
        print(
            f"n={node.n} construction={node.construction} "
            f"residual_rel={node.residual_rel:.3e} kernel_abs={node.kernel_abs:.3e} "
            f"witness_abs={node.fn_witness.value_abs:.3e}"
        )
    if not cfg.out:
        print(text)


def cmd_find_zero(args, cfg: RunConfig) -> int:
    if args.n < 3:
        print("find-zero: kernel zeros exist for n >= 3 only", file=sys.stderr)
        return EXIT_USAGE
    if args.n == 3:
        cert = zerofind.construct_zero_dim3(
            rho=args.rho if args.rho is not None else 0.999,
            mu1_modulus=args.mu1 if args.mu1 is not None else 0.9995,
            tol=cfg.tol_dim3,
            seed=cfg.seed,
        )
    else:
        kwargs = {}
        if args.rho is not None:
            kwargs["rho"] = args.rho
        if args.mu1 is not None:
            kwargs["mu1_modulus"] = args.mu1
        cert = zerofind.build_certificate_chain(
            args.n,
            config=_lift_config(args),
            tol_dim3=cfg.tol_dim3,
            tol_lift=cfg.tol_lift,
            seed=cfg.seed,
            **kwargs,
        )
    _emit_certificate(cert, cfg)
    return EXIT_OK


def cmd_lift(args, cfg: RunConfig) -> int:
    with open(args.cert) as fh:
        cert = ZeroCertificate.from_dict(json.load(fh))
    lifted = zerofind.lift_zero(cert, config=_lift_config(args), tol=cfg.tol_lift)
    _emit_certificate(lifted, cfg)
    return EXIT_OK


# --- eval ----------------------------------------------------------------------


def cmd_eval(args, cfg: RunConfig) -> int:
    lam = tuple(args.lam)
    mu = tuple(args.mu)
    if len(lam) != args.n or len(mu) != args.n:
        print(
            f"eval: expected {args.n} coordinates per tuple, got {len(lam)} and {len(mu)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if args.stable:
        from .symcore import elem_sym

        ev = kernel.kernel_gn_stable(elem_sym(lam), elem_sym(mu))
    else:
        ev = kernel.kernel_gn(lam, mu)
    if cfg.fmt == "json":
        payload = {
            "value": [ev.value.real, ev.value.imag],
            "abs": abs(ev.value),
            "delta": [ev.numerator.real, ev.numerator.imag],
            "scale": ev.scale,
            "scaled_delta_abs": abs(ev.numerator) / ev.scale,
        }
        _write_output(cfg, json.dumps(payload, indent=2, sort_keys=True))
    else:
        _write_output(
            cfg,
            "\n".join(
                [
                    f"K        = {_fmt_complex(ev.value)}  (|K| = {abs(ev.value):.6e})",
                    f"delta    = {_fmt_complex(ev.numerator)}",
                    f"scale    = {ev.scale:.6e}",
                    f"scaled |delta| = {abs(ev.numerator) / ev.scale:.6e}",
                ]
            ),
        )
    return EXIT_OK


# --- sample ---------------------------------------------------------------------


def cmd_sample(args, cfg: RunConfig) -> int:
    report = zerofind.sample_nonvanishing(
        args.mode, args.count, seed=cfg.seed, n=args.n, workers=cfg.workers
    )
    if cfg.fmt == "json":
        _write_output(cfg, json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        lines = [
            f"mode={report.mode} samples={report.samples} seed={report.seed}",
            f"min scaled |delta| = {report.min_scaled_abs:.6e}",
            f"argmin lambda = {[_fmt_complex(c) for c in report.argmin_lambda]}",
            f"argmin mu     = {[_fmt_complex(c) for c in report.argmin_mu]}",
            f"zero found: {'yes' if report.zero_found else 'no'}",
        ]
        if report.diag_min_real is not None:
            lines.append(
                f"diagonal: min real part {report.diag_min_real:.6e}, "
                f"max |imag|/real {report.diag_max_imag_ratio:.3e}"
            )
        _write_output(cfg, "\n".join(lines))
    return EXIT_OK


# --- grid -----------------------------------------------------------------------


def cmd_grid(args, cfg: RunConfig) -> int:
    with open(args.around) as fh:
        cert = ZeroCertificate.from_dict(json.load(fh))
    lam = np.asarray(cert.lam, dtype=complex)
    mu = np.asarray(cert.mu, dtype=complex)
    res = args.res
    width = args.width

    if args.axis == "z":
        center = mu[1].conjugate() / mu[0].conjugate()
    elif args.axis == "lambda1":
        center = lam[0]
    elif args.axis == "mu2":
        center = mu[1]
    else:
        print(f"grid: unknown axis {args.axis!r}", file=sys.stderr)
        return EXIT_USAGE

    half = res // 2
    step = width / max(half, 1)
    offsets = (np.arange(res) - half) * step
    pts = center + offsets[:, None] + 1j * offsets[None, :]
    flat = pts.ravel()

    count = flat.size
    lams = np.tile(lam, (count, 1))
    mus = np.tile(mu, (count, 1))
    if args.axis == "z":
        mus[:, 1] = np.conj(flat) * mus[:, 0]
    elif args.axis == "lambda1":
        lams[:, 0] = flat
    else:
        mus[:, 1] = flat
    values = kernel.batch_kernel(lams, mus)

    lines = ["re,im,abs_k,arg_k"]
    for p, v in zip(flat, values):
        lines.append(f"{p.real:.17g},{p.imag:.17g},{abs(v):.17g},{np.angle(v):.17g}")
    _write_output(cfg, "\n".join(lines))
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", dest="fmt"
    )
    common.add_argument("--tol-cert", type=float, default=zerofind.DEFAULT_TOL_DIM3)
    common.add_argument("--tol-lift", type=float, default=zerofind.DEFAULT_TOL_LIFT)
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="symdisc",
        description="Bergman kernel of the symmetrized polydisc: evaluation, "
        "certified zeros, exact identity verification.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "verify-paper",
        help="run the exact and numeric identity suite",
        parents=[common],
    )
    p.add_argument("--fault-inject", choices=("p-coeff",), default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("find-zero", help="construct a certified kernel zero", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--mu1", type=float, default=None)
    p.add_argument("--disc-radius", type=float, default=None)
    p.add_argument("--append-step", type=float, default=None)
    p.add_argument("--max-retries", type=int, default=None)
    p.set_defaults(func=cmd_find_zero)

    p = sub.add_parser("lift", help="lift a certificate one dimension up", parents=[common])
    p.add_argument("--cert", required=True)
    p.add_argument("--disc-radius", type=float, default=None)
    p.add_argument("--append-step", type=float, default=None)
    p.add_argument("--max-retries", type=int, default=None)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("eval", help="evaluate the kernel at explicit tuples", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=parse_complex, nargs="+", required=True)
    p.add_argument("--mu", type=parse_complex, nargs="+", required=True)
    p.add_argument("--stable", action="store_true", help="evaluate via the confluent route")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", help="sample families for small determinant values", parents=[common])
    p.add_argument("mode", choices=zerofind.SAMPLING_MODES)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--n", type=int, default=3, help="dimension for diagonal mode")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("grid", help="CSV slice of |K| and arg(K) around a certificate", parents=[common])
    p.add_argument("--around", required=True, help="certificate JSON file")
    p.add_argument("--axis", choices=("z", "lambda1", "mu2"), default="z")
    p.add_argument("--res", type=int, default=200)
    p.add_argument("--width", type=float, default=0.05)
    p.set_defaults(func=cmd_grid)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        seed=args.seed,
        out=args.out,
        fmt=args.fmt,
        tol_dim3=args.tol_cert,
        tol_lift=args.tol_lift,
        workers=args.workers,
    )
    try:
        return args.func(args, cfg)
    except (ValueError, OSError) as exc:
        print(f"symdisc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SymdiscError as exc:
        print(f"symdisc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
