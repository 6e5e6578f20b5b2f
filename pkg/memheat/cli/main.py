# -*- coding: utf-8 -*-
"""memheat command line.

    memheat simulate --config run.yaml
    memheat preset example31
    memheat certify-kernel --config run.yaml
    memheat fit --trace runs/example31/trace.csv --model power_law
    memheat converge --config run.yaml --levels 3

Exit codes: 0 success, 1 I/O or unexpected failure, 2 invalid config or
argument, 3 kernel or coercivity hypothesis violated, 4 numerical
failure, 5 envelope check failed.
"""
import argparse
import logging
import sys

from memheat.analysis.fitting import FitModel, fit_decay
from memheat.cli.emit import read_trace_csv
from memheat.cli.presets import PRESETS
from memheat.cli.runner import execute, run_preset
from memheat.cli.study import convergence_study
from memheat.config import Settings, load_run_config
from memheat.exceptions import MemheatException
from memheat.kernel import certify_g2, kernel_from_config
from memheat.utils import jsonn

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level=None):
    level = level or Settings().memheat_log_level
    logging.basicConfig(level=str(level).upper(), format=LOG_FORMAT)


def _simulate(args):
    config = load_run_config(args.config)
    artifacts = execute(config, args.output_dir, args.refine)
    return artifacts.summary


def _preset(args):
    return run_preset(args.name, args.output_dir, args.refine).summary


def _certify_kernel(args):
    section = load_run_config(args.config).kernel
    certificate = certify_g2(kernel_from_config(section), p=section.p)
    return certificate.to_dict()


def _fit(args):
    trace = read_trace_csv(args.trace)
    return fit_decay(trace, args.model, args.window, args.nu).to_dict()


def _converge(args):
    config = load_run_config(args.config)
    return convergence_study(config, args.levels).to_dict()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="memheat",
        description=(
            "Quasilinear heat flow with fading memory: simulate, certify "
            "kernels and check energy decay envelopes."
        ),
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="overrides MEMHEAT_LOG_LEVEL",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="run a config file")
    simulate.add_argument("--config", required=True)
    preset = commands.add_parser("preset", help="run a shipped preset")
    preset.add_argument("name", choices=PRESETS)
    for sub in (simulate, preset):
        sub.add_argument(
            "--output-dir",
            default=None,
            help="defaults to output.dir, then MEMHEAT_OUTPUT_DIR/<preset>",
        )
        sub.add_argument(
            "--refine",
            action="store_true",
            help="also run at dt/2, h/2 for the dissipation residual ratio",
        )
    simulate.set_defaults(handler=_simulate)
    preset.set_defaults(handler=_preset)

    certify = commands.add_parser(
        "certify-kernel", help="print l, p, xi and the measured slack"
    )
    certify.add_argument("--config", required=True)
    certify.set_defaults(handler=_certify_kernel)

    fit = commands.add_parser("fit", help="fit a decay law to a trace CSV")
    fit.add_argument("--trace", required=True)
    fit.add_argument(
        "--model", choices=FitModel.values(), default="power_law"
    )
    fit.add_argument("--nu", type=float, default=1.0)
    fit.add_argument(
        "--window", type=float, nargs=2, metavar=("T0", "T1"), default=None
    )
    fit.set_defaults(handler=_fit)

    converge = commands.add_parser(
        "converge", help="refinement study over dt and h"
    )
    converge.add_argument("--config", required=True)
    converge.add_argument("--levels", type=int, default=2)
    converge.set_defaults(handler=_converge)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        result = args.handler(args)
    except MemheatException as exc:
        logger.error("%s", exc)
        return exc.exit_code
    except OSError as exc:
        logger.error("%s", exc)
        return 1
    print(jsonn.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
