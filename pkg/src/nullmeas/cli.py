"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 a validation suite failed
(``mc-validate``, ``verify-tables``), 3 I/O failure.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .montecarlo import McConfig, mc_validate
from .scan import (
    FIGURES,
    ConfigError,
    ScanConfig,
    emit_figure_data,
    format_csv,
    run_scan,
    scan_columns,
    verify_tables,
)
from .thresholds import DEFAULT_TAU_MAX, I_MAX_MODES, threshold_report

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SUITE_FAILED = 2
EXIT_IO = 3


class _IOFailure(Exception):
    pass


def _parse_prior(text):
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {out}: {exc.strerror or exc}") from None


def _dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _add_common(p, *, grid=True):
    p.add_argument("--prior", type=_parse_prior, help="comma separated p(x_n), e.g. 0.5,0.5")
    p.add_argument("--tau-max", type=float, default=None)
    if grid:
        p.add_argument("--tau-min", type=float, default=None)
        p.add_argument("--points", type=int, default=None)
        p.add_argument("--config", help="JSON run configuration (unknown keys are rejected)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nullmeas",
        description="Information measures of null-result weak measurements.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("scan", "static quantities on a tau grid"),
        ("rates", "static quantities plus analytic rates on a tau grid"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        p.add_argument("--i-max-mode", choices=I_MAX_MODES, default=None)

    p = sub.add_parser("thresholds", help="threshold times for one prior")
    _add_common(p, grid=False)
    p.add_argument("--i-max-mode", choices=I_MAX_MODES, default="window")

    p = sub.add_parser("figure", help="curve data for one figure (one CSV per panel)")
    p.add_argument("figure_id", choices=sorted(FIGURES))
    p.add_argument("--points", type=int, default=501)
    p.add_argument("--tau-max", type=float, default=5.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="directory for CSV panels, or JSON file path")

    p = sub.add_parser("mc-validate", help="Monte Carlo check against the analytic update")
    p.add_argument("--prior", type=_parse_prior, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sigma", type=float, default=4.0, help="allowed deviation in standard errors")
    p.add_argument("--tv-tol", type=float, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out")

    p = sub.add_parser("verify-tables", help="compare threshold times to the published tables")
    p.add_argument("--i-max-mode", choices=I_MAX_MODES, default="window")
    p.add_argument("--tau-max", type=float, default=DEFAULT_TAU_MAX)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    return parser


def _scan_config(args, rates):
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise _IOFailure(f"cannot read {args.config}: {exc.strerror or exc}") from None
        data = ScanConfig.from_json(text).to_dict()
    else:
        if args.prior is None:
            raise ConfigError("prior: required (--prior or --config)")
        data = {"prior": list(args.prior)}
    overrides = {
        "prior": list(args.prior) if args.prior else None,
        "tau_min": args.tau_min,
        "tau_max": args.tau_max,
        "points": args.points,
        "format": args.format,
        "i_max_mode": args.i_max_mode,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    outputs = list(data.get("outputs", ["snapshots"]))
    if rates and "rates" not in outputs:
        outputs.append("rates")
    data["outputs"] = outputs
    return ScanConfig.from_dict(data)


def _cmd_scan(args, rates=False):
    config = _scan_config(args, rates)
    rows = list(run_scan(config))
    columns = scan_columns("rates" in config.outputs)
    if config.format == "csv":
        _write(format_csv(rows, columns), args.out)
        return EXIT_OK
    payload = {"config": config.to_dict(), "columns": list(columns), "rows": rows}
    if "thresholds" in config.outputs:
        payload["thresholds"] = threshold_report(
            config.prior, config.i_max_mode, config.tau_max
        ).as_dict()
    if "mc" in config.outputs:
        payload["mc"] = mc_validate(config.mc).as_dict()
    _write(_dump_json(payload), args.out)
    return EXIT_OK


def _cmd_thresholds(args):
    if args.prior is None:
        raise ConfigError("prior: required")
    tau_max = DEFAULT_TAU_MAX if args.tau_max is None else args.tau_max
    report = threshold_report(args.prior, args.i_max_mode, tau_max)
    if (args.format or "csv") == "json":
        _write(_dump_json(report.as_dict()), args.out)
        return EXIT_OK
    d = report.as_dict()
    cols = ("tau_fidelity_90", "tau_prev_50", "tau_info_90", "i_max_mode", "tau_max")

    def cell(v):
        if v is None:
            return ""
        return format(v, ".12g") if isinstance(v, float) else str(v)

    text = "prior," + ",".join(cols) + "\n"
    text += '"' + ",".join(format(p, ".12g") for p in report.prior) + '",'
    text += ",".join(cell(d[c]) for c in cols) + "\n"
    _write(text, args.out)
    return EXIT_OK


def _cmd_figure(args):
    dataset = emit_figure_data(args.figure_id, points=args.points, tau_max=args.tau_max)
    if args.format == "json":
        _write(_dump_json(dataset.as_dict()), args.out)
        return EXIT_OK
    if args.out is None:
        chunks = []
        for panel in dataset.panels:
            prior = ",".join(format(p, ".12g") for p in panel.prior)
            chunks.append(f"# {dataset.figure_id}({panel.panel}) prior={prior}\n")
            chunks.append(format_csv(panel.rows(), panel.columns))
        _write("".join(chunks), None)
        return EXIT_OK
    for panel in dataset.panels:
        path = Path(args.out) / f"{dataset.figure_id}_{panel.panel}.csv"
        _write(format_csv(panel.rows(), panel.columns), path)
    return EXIT_OK


def _cmd_mc_validate(args):
    config = McConfig(
        prior=args.prior, tau=args.tau, samples=args.samples, seed=args.seed, workers=args.workers
    )
    result = mc_validate(config, n_sigma=args.sigma, tv_tol=args.tv_tol)
    if args.format == "json":
        _write(_dump_json(result.as_dict()), args.out)
    else:
        text = "check,estimate,expected,stderr,bound,passed\n"
        for c in result.checks:
            se = "" if c.stderr is None else format(c.stderr, ".12g")
            text += (
                f"{c.name},{c.estimate:.12g},{c.expected:.12g},{se},{c.bound:.12g},"
                f"{str(c.passed).lower()}\n"
            )
        _write(text, args.out)
    if result.reason:
        print(f"mc-validate: {result.reason}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_SUITE_FAILED


def _cmd_verify_tables(args):
    checks = verify_tables(args.i_max_mode, args.tau_max)
    if args.format == "json":
        text = _dump_json(
            [
                {
                    "table": c.table,
                    "panel": c.panel,
                    "column": c.column,
                    "computed": c.computed,
                    "published": c.published,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in checks
            ]
        )
    else:
        text = "".join(c.line() + "\n" for c in checks)
    _write(text, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_SUITE_FAILED


_COMMANDS = {
    "scan": lambda a: _cmd_scan(a, rates=False),
    "rates": lambda a: _cmd_scan(a, rates=True),
    "thresholds": _cmd_thresholds,
    "figure": _cmd_figure,
    "mc-validate": _cmd_mc_validate,
    "verify-tables": _cmd_verify_tables,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for suite failures here
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except _IOFailure as exc:
        print(f"nullmeas: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"nullmeas: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
