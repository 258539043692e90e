"""Command-line front end.

    python run.py fidelity --ideal --kappa0 0 --s-db 0
    python run.py reproduce fig3a --out result --format csv
    python run.py optimize --r 0.05 --eta 0.05 --s-db 5
    python run.py convergence --kappa0 5 --eta 0.05 --s-db 5 --slices 16,64,256,1024
    python run.py check

Exit codes: 0 success, 1 failed property check or unphysical state, 2 invalid flags, 3 I/O error.
"""
import argparse
import json
import logging
import math
import os
import sys
from typing import List, Optional

import pandas as pd

from engines import get_engine
from gaussian import NonPhysicalStateError
from protocol import GateParams, closed_form_fidelity, noisy_gate_fidelity
from protocol.params import ORDERINGS
from QNDGate.checks import PhysicsChecker
from QNDGate.optimizer import optimize_kappa0
from QNDGate.qndgate import FIGURES, figure_tables
from QNDGate.tools.utilities import db_to_s, load_defaults

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_FLAGS = 2
EXIT_IO = 3

FLOAT_FORMAT = "%#.6g"


class FlagError(ValueError):
    """Invalid command-line value, tagged with the offending flag."""

    def __init__(self, flag: str, message: str) -> None:
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _slice_list(text: str) -> List[int]:
    try:
        values = [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty slice list")
    return values


def _gate_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--kappa", type=float, default=None, help="gate coupling (default 1)")
    parent.add_argument("--r", type=float, default=0.0, help="wall reflection coefficient")
    parent.add_argument("--eta", type=float, default=0.0, help="integrated atomic decay")
    squeezing = parent.add_mutually_exclusive_group()
    squeezing.add_argument("--s", type=float, default=None, help="input squeezing parameter")
    squeezing.add_argument("--s-db", type=float, default=None, help="input squeezing in dB")
    parent.add_argument("--s-probe-db", type=float, default=0.0, help="probe squeezing used for spin squeezing, in dB")
    parent.add_argument("--ordering", choices=ORDERINGS, default=None, help="slice order of the second pass")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qndgate", description="Atomic-ensemble controlled-Z gate simulator")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)
    gate = _gate_flags()

    p = sub.add_parser("fidelity", parents=[gate], help="gate fidelity at one operating point")
    branch = p.add_mutually_exclusive_group()
    branch.add_argument("--ideal", dest="noisy", action="store_false", help="lossless closed form (default)")
    branch.add_argument("--noisy", dest="noisy", action="store_true", help="time-sliced simulation with losses")
    p.set_defaults(noisy=False)
    p.add_argument("--kappa0", type=float, required=True)
    p.add_argument("--slices", type=int, default=None)

    p = sub.add_parser("reproduce", help="write the tables behind a figure")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--slices", type=int, default=None)
    p.add_argument("--ordering", choices=ORDERINGS, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="output directory (default result/)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("optimize", parents=[gate], help="optimal kappa0 for fixed losses")
    p.add_argument("--slices", type=int, default=None)
    p.add_argument("--bounds", type=float, nargs=2, default=None, metavar=("LO", "HI"))

    p = sub.add_parser("convergence", parents=[gate], help="fidelity error against slice count")
    p.add_argument("--kappa0", type=float, default=5.0)
    p.add_argument("--slices", type=_slice_list, default=[16, 64, 256, 1024], help="ascending comma-separated list")
    p.add_argument("--out", default=None, help="CSV file (default stdout)")

    p = sub.add_parser("check", help="run the physics property suite")
    p.add_argument("--slices", type=int, default=None)
    return parser


def _finite(flag: str, value: float) -> float:
    if not math.isfinite(value):
        raise FlagError(flag, "must be finite")
    return value


def _squeezing(args) -> float:
    if args.s_db is not None:
        return db_to_s(_finite("--s-db", args.s_db))
    if args.s is not None:
        return _finite("--s", args.s)
    return 0.0


def _gate_params(args, kappa0: float) -> GateParams:
    """GateParams from the shared flags, reporting the first invalid flag."""
    kappa = load_defaults()["KAPPA"] if args.kappa is None else _finite("--kappa", args.kappa)
    if not math.isfinite(kappa0) or kappa0 < 0:
        raise FlagError("--kappa0", f"must be a finite number >= 0, got {kappa0}")
    r = _finite("--r", args.r)
    if not 0.0 <= r < 1.0:
        raise FlagError("--r", f"must lie in [0, 1), got {r}")
    eta = _finite("--eta", args.eta)
    if eta < 0:
        raise FlagError("--eta", f"must be >= 0, got {eta}")
    s_probe = db_to_s(_finite("--s-probe-db", args.s_probe_db))
    return GateParams(kappa=kappa, kappa0=kappa0, s_light=_squeezing(args), r=r, eta=eta, s_probe=s_probe)


def _slices(value: Optional[int], default: int) -> int:
    if value is None:
        return default
    if value < 1:
        raise FlagError("--slices", f"must be >= 1, got {value}")
    return value


def _ordering(args) -> str:
    return args.ordering or load_defaults()["ORDERING"]


def write_table(table: pd.DataFrame, path: str, fmt: str) -> None:
    if fmt == "csv":
        table.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(table.to_dict(orient="records"), f, sort_keys=True, indent=2)
        f.write("\n")


def cmd_fidelity(args) -> int:
    defaults = load_defaults()
    params = _gate_params(args, args.kappa0)
    K = _slices(args.slices, defaults["SLICES"]["optimize"])
    if args.noisy:
        if params.r >= 1.0 / 3.0:
            raise FlagError("--r", f"must be below 1/3 for the sliced simulation, got {params.r}")
        value = noisy_gate_fidelity(params, K, _ordering(args))
    else:
        if not params.is_ideal:
            raise FlagError("--ideal", "takes no --r or --eta; use --noisy")
        branch = "ideal-closed-form" if params.kappa == 1.0 else "ideal-simulated"
        value = get_engine(branch, K, _ordering(args)).fidelity(params)
    print(f"{value:#.6g}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    defaults = load_defaults()
    if args.slices is not None:
        _slices(args.slices, 0)
    if args.workers < 1:
        raise FlagError("--workers", f"must be >= 1, got {args.workers}")
    out = args.out or defaults["OUTPUT_DIR"]
    tables = figure_tables([args.figure], slices=args.slices, workers=args.workers, ordering=args.ordering)
    os.makedirs(out, exist_ok=True)
    for name, table in tables.items():
        path = os.path.join(out, f"{name}.{args.format}")
        write_table(table, path, args.format)
        print(path)
    return EXIT_OK


def cmd_optimize(args) -> int:
    defaults = load_defaults()
    params = _gate_params(args, 0.0)
    if params.r >= 1.0 / 3.0:
        raise FlagError("--r", f"must be below 1/3 for the sliced simulation, got {params.r}")
    opt = defaults["OPTIMIZER"]
    bounds = tuple(args.bounds) if args.bounds else tuple(opt["bounds"])
    if not 0 < bounds[0] < bounds[1]:
        raise FlagError("--bounds", f"need 0 < LO < HI, got {bounds}")
    result = optimize_kappa0(
        params.r,
        params.eta,
        params.s_light,
        K=_slices(args.slices, defaults["SLICES"]["optimize"]),
        bounds=bounds,
        scan_points=opt["scan_points"],
        tol=opt["tolerance"],
        kappa=params.kappa,
        s_probe=params.s_probe,
        ordering=_ordering(args),
    )
    print(json.dumps(result.as_record(), sort_keys=True))
    return EXIT_OK


def convergence_table(params: GateParams, slices: List[int], reference_slices: int, ordering: str) -> pd.DataFrame:
    """|F_K - F_ref| per slice count; the lossless unit-gain reference is the closed form."""
    if params.is_ideal and params.kappa == 1.0:
        reference = closed_form_fidelity(params.kappa0, params.s_light, params.s_probe)
        if ordering == "preserved":
            logger.warning("lossless preserved-order slicing is exact; the error column is round-off only")
    else:
        reference = noisy_gate_fidelity(params, reference_slices, ordering)
    values = [noisy_gate_fidelity(params, K, ordering) for K in slices]
    return pd.DataFrame({
        "slices": slices,
        "fidelity": values,
        "error": [abs(v - reference) for v in values],
    })


def cmd_convergence(args) -> int:
    params = _gate_params(args, args.kappa0)
    if params.r >= 1.0 / 3.0:
        raise FlagError("--r", f"must be below 1/3 for the sliced simulation, got {params.r}")
    slices = args.slices
    if any(K < 1 for K in slices):
        raise FlagError("--slices", "slice counts must be >= 1")
    if any(b <= a for a, b in zip(slices, slices[1:])):
        raise FlagError("--slices", f"must be strictly ascending, got {slices}")
    table = convergence_table(params, slices, load_defaults()["SLICES"]["reference"], _ordering(args))
    if args.out:
        table.to_csv(args.out, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    else:
        sys.stdout.write(table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))
    return EXIT_OK


def cmd_check(args) -> int:
    checker = PhysicsChecker(_slices(args.slices, load_defaults()["SLICES"]["optimize"]))
    return EXIT_OK if checker.run_full_check() else EXIT_CHECK_FAILED


COMMANDS = {
    "fidelity": cmd_fidelity,
    "reproduce": cmd_reproduce,
    "optimize": cmd_optimize,
    "convergence": cmd_convergence,
    "check": cmd_check,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except NonPhysicalStateError as e:
        print(f"{parser.prog} {args.command}: internal error: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except ValueError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_FLAGS
    except OSError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_IO
