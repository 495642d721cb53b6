"""Command-line front end.

Every command reads JSON and writes JSON (standard output unless
``--output`` is given). Exit status: 0 on success, 1 on invalid input,
2 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import models
from .dist import JointDistribution, entropy_bits, marginals, product_table, weight_of
from .errors import ConsistencyError, ValidationError
from .polytope import FEAS_TOL, default_workers
from .solver import MAX_EXACT_D, certify, solve_exact, solve_heuristic, solve_oracle

COMMANDS = (
    "weight",
    "decompose",
    "certify",
    "oracle",
    "heuristic",
    "marginal-weight",
    "entropy",
    "from-bn",
    "from-mrf",
)


class InputError(Exception):
    pass


def _read_json(name: str):
    path = Path(name)
    if not path.exists():
        try:
            path = models.fixture_path(name)
        except KeyError:
            raise InputError(f"{name}: no such file or bundled fixture") from None
    try:
        with open(path) as fh:
            return path, json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(name: str, parse):
    path, doc = _read_json(name)
    try:
        return parse(doc)
    except ValidationError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_q(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=_positive_int, default=101, help="oracle grid points per axis")
    common.add_argument("--starts", type=_positive_int, default=32, help="heuristic random starts")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-d", type=_positive_int, default=MAX_EXACT_D, help="exact solver dimension cap")
    common.add_argument("--force", action="store_true", help="run the exact solver above --max-d")
    common.add_argument("--workers", type=_positive_int, default=None, help="worker processes (default: all CPUs)")
    common.add_argument("--tol", type=float, default=None, help="feasibility / certificate tolerance")
    common.add_argument("--output", "-o", default=None, help="write the result here instead of stdout")
    common.add_argument("--summary", action="store_true", help="print a short summary to stderr")

    parser = argparse.ArgumentParser(
        prog="latentweight", description="Latent independent weight of binary distributions."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("weight", "exact latent independent weight"),
        ("decompose", "exact weight with the full decomposition"),
        ("oracle", "grid maximin lower bound"),
        ("heuristic", "multi-start local search"),
        ("marginal-weight", "weight of the product of the marginals"),
        ("entropy", "entropy in bits"),
        ("from-bn", "materialize a Bayesian network as a distribution file"),
        ("from-mrf", "materialize a Markov network as a distribution file"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input")
    p = sub.add_parser("certify", parents=[common], help="check P >= lambda * Q(q)")
    p.add_argument("input")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--q", type=_parse_q, required=True, help="comma-separated success probabilities")
    return parser


def run(args: argparse.Namespace) -> tuple[dict, str]:
    """Execute one command; returns the JSON document and a one-line summary."""
    cmd = args.command
    if cmd == "from-bn":
        P = models.bn_to_joint(_load(args.input, models.BayesNet.from_dict))
        return P.to_dict(), f"d={P.d} joint from Bayesian network"
    if cmd == "from-mrf":
        P = models.mrf_to_joint(_load(args.input, models.MarkovNet.from_dict))
        return P.to_dict(), f"d={P.d} joint from Markov network"

    P = _load(args.input, JointDistribution.from_dict)
    if cmd in ("weight", "decompose"):
        workers = args.workers or default_workers()
        report = solve_exact(
            P,
            max_d=args.max_d,
            force=args.force,
            tol=FEAS_TOL if args.tol is None else args.tol,
            workers=workers,
        )
        return report.to_dict(), _report_summary(report.to_dict())
    if cmd == "oracle":
        doc = solve_oracle(P, args.grid).to_dict()
        return doc, _report_summary(doc)
    if cmd == "heuristic":
        doc = solve_heuristic(P, args.starts, args.seed).to_dict()
        return doc, _report_summary(doc)
    if cmd == "certify":
        kwargs = {} if args.tol is None else {"tol": args.tol}
        res = certify(P, args.lam, args.q, **kwargs)
        doc = {
            "valid": res.valid,
            "lambda": args.lam,
            "q": args.q,
            "worst_slack": res.worst_slack,
            "worst_outcome": res.worst_outcome,
        }
        return doc, f"certificate {'holds' if res.valid else 'FAILS'} (worst slack {res.worst_slack:.3e})"
    if cmd == "marginal-weight":
        q = marginals(P)
        w = weight_of(P, product_table(q))
        return {"marginal_weight": w, "marginals": q.q.tolist()}, f"marginal weight {w:.6f}"
    if cmd == "entropy":
        h = entropy_bits(P)
        return {"entropy_bits": h}, f"entropy {h:.6f} bits"
    raise ValueError(f"unknown command {cmd!r}")


def _report_summary(doc: dict) -> str:
    q = ", ".join(f"{x:.6g}" for x in doc["q_star"])
    return (
        f"{doc['method']}: lambda={doc['lambda']:.9g} q*=({q}) "
        f"omega={doc['achieving_outcome']} in {doc['wall_time_s']:.3f}s"
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, summary = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.summary:
        print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
