"""Benchmark command line: rbfcv-bench {test1,test2,test3,test4,custom} [flags].

Flags override values from an optional JSON config file (--config).  Exit
codes: 0 on success, 2 on configuration errors, 3 on numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import RbfCvError
from .experiments import RUNNERS, SUPPORTED_MU, ExperimentConfig
from .kernels import IMQ, MATERN2
from .tuning import STRATEGIES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbfcv-bench",
        description="Cross-validation benchmarks for RBF collocation on the unit square.",
    )
    sub = parser.add_subparsers(dest="test_id", required=True)
    for test_id, blurb in (
        ("test1", "LOOCV timing/accuracy comparison over problem sizes"),
        ("test2", "symmetric collocation table (three strategies)"),
        ("test3", "non-square table with exterior centers"),
        ("test4", "fold-count study (exact vs surrogate)"),
        ("custom", "one sweep with a custom configuration"),
    ):
        p = sub.add_parser(test_id, help=blurb)
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--mu", type=int, help=f"interior point count, one of {SUPPORTED_MU}")
        p.add_argument("--kernel", choices=(MATERN2, IMQ))
        p.add_argument("--method", choices=("kansa", "hermite"))
        p.add_argument("--centers", choices=("coincident", "exterior"))
        p.add_argument("--k", type=int, dest="k_folds", help="fold count (omit for leave-one-out)")
        p.add_argument("--seed", type=int)
        p.add_argument("--laplacian-mode", choices=("classic", "analytic2d"), dest="laplacian_mode")
        p.add_argument("--fold-scheme", choices=("contiguous", "shuffled"), dest="fold_scheme")
        p.add_argument("--strategy", choices=STRATEGIES, help="custom runs only")
        p.add_argument("--boundary-count", type=int, dest="boundary_count")
        p.add_argument("--out", dest="out_dir", help="output directory (default: results)")
        p.add_argument("--mu-list", dest="mu_list",
                       help="comma-separated sizes for test1, e.g. 16,64,144,256")
        p.add_argument("--grid-count", type=int, dest="grid_count")
        p.add_argument("--grid-min-exp", type=float, dest="grid_min_exp")
        p.add_argument("--grid-max-exp", type=float, dest="grid_max_exp")
        p.add_argument("--threads", action="store_true",
                       help="allow multithreaded BLAS (timings become incomparable)")
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            data.update(json.load(fh))
    data["test_id"] = args.test_id
    for key in ("mu", "kernel", "method", "centers", "k_folds", "seed",
                "laplacian_mode", "fold_scheme", "strategy", "boundary_count",
                "out_dir", "grid_count", "grid_min_exp", "grid_max_exp"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if getattr(args, "mu_list", None):
        data["mu_list"] = tuple(int(x) for x in args.mu_list.split(","))
    if getattr(args, "threads", False):
        data["single_thread"] = False
    return ExperimentConfig.from_dict(data)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        runner = RUNNERS[config.test_id]
        summary = runner(config)
    except (ValueError, OSError, RbfCvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, (ValueError, OSError)) else 3
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
