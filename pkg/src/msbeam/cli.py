"""Command-line front end.

Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import coding, exports, farfield, scenario as scen
from .coding import TdmBudget
from .surface import ComplexProfile, build_grid, canonical_codebook, quantize_profile

EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_NUMERIC = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message, EXIT_VALIDATION)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--angle-res-deg", type=float, default=farfield.DEFAULT_RESOLUTION_DEG)
    p.add_argument("--fading", action=argparse.BooleanOptionalAction, default=False,
                   help="Monte-Carlo fast fading (off by default)")
    return p


def _grid_args(p: argparse.ArgumentParser):
    p.add_argument("--m-count", type=int, default=24)
    p.add_argument("--n-count", type=int, default=24)
    p.add_argument("--cell-size", type=float, default=1 / 3, help="cell size in wavelengths")
    p.add_argument("--frequency", type=float, default=28e9, help="Hz")
    p.add_argument("--states", type=int, default=4, help="number of phase states N_s")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="msbeam", description="Multi-beam metasurface coding and link evaluation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("code", parents=[common], help="quantized state matrix for a target list")
    p.add_argument("--targets", required=True, help="JSON list of {theta_deg, phi_deg}")
    p.add_argument("--method", choices=scen.METHODS, default="phase_only")
    p.add_argument("--axis", choices=("row", "column"), default="row", help="SDM split axis")
    _grid_args(p)

    p = sub.add_parser("pattern", parents=[common], help="far-field pattern and metrics")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--profile", help="state matrix (CSV or JSON) written by 'code'")
    src.add_argument("--targets", help="JSON list of {theta_deg, phi_deg}")
    p.add_argument("--method", choices=scen.METHODS, default="phase_only")
    p.add_argument("--axis", choices=("row", "column"), default="row")
    p.add_argument("--efficiency", type=float, default=0.9)
    p.add_argument("--metrics", help="metrics JSON path (default: <out>.metrics.json, or stderr)")
    _grid_args(p)

    for name in ("scenario", "sweep"):
        p = sub.add_parser(name, parents=[common], help=f"run a {name}")
        where = p.add_mutually_exclusive_group()
        where.add_argument("--scenario", help="scenario JSON file")
        where.add_argument("--kind", choices=("indoor", "umi"), default="indoor",
                           help="bundled default scenario")
        p.add_argument("--drops", type=int, default=10_000)
        p.add_argument("--calibrate-bps", type=float,
                       help="recalibrate serving bandwidth so one UE at zero offset gets this rate")
        if name == "scenario":
            p.add_argument("--method", choices=scen.METHODS, default="phase_only")
            p.add_argument("-K", "--ue-count", type=int, default=1)
            p.add_argument("--offset", type=float, default=0.0, help="extra UE distance (m)")
        else:
            p.add_argument("--methods", default="phase_only,amp_phs")
            p.add_argument("--k-range", default="1-8", help="e.g. '1-8' or '1,2,6'")
            p.add_argument("--offsets", default="0", help="comma-separated metres")

    p = sub.add_parser("tdm", parents=[common], help="TDM subframe length")
    p.add_argument("--groups", type=int, required=True)
    p.add_argument("--ugd-us", type=float, required=True, help="user-group delay (us)")
    p.add_argument("--reconfig-us", type=float, required=True, help="reconfiguration time (us)")
    p.add_argument("--limit-ms", type=float, default=1.0)
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror}", EXIT_IO) from None


def _targets(path: str):
    try:
        return exports.parse_targets(_read(path))
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed targets JSON: {exc}", EXIT_VALIDATION) from None


def _grid(args):
    return build_grid(args.m_count, args.n_count, args.cell_size, args.frequency)


def _synthesize(grid, targets, method, axis, codebook):
    if method == "phase_only":
        profile, states = quantize_profile(coding.phase_only_profile(grid, targets), codebook)
        return profile, states, None
    if method == "sdm":
        profile, states = quantize_profile(coding.sdm_partition_profile(grid, targets, axis), codebook)
        return profile, states, None
    cplx = coding.superpose(grid, targets)
    q, states = quantize_profile(coding.PhaseProfile(grid, cplx.phase), codebook)
    return ComplexProfile(grid, cplx.amplitude, q.phase), states, cplx.amplitude


def cmd_code(args) -> int:
    targets = _targets(args.targets)
    grid = _grid(args)
    codebook = canonical_codebook(args.states)
    _, states, amplitude = _synthesize(grid, targets, args.method, args.axis, codebook)
    if args.format == "json":
        text = exports.state_matrix_json(states, codebook.state_count, amplitude)
    else:
        text = exports.state_matrix_csv(states)
    _emit(text, args.out)
    destructive = coding.destructive_cells(grid, targets) if args.method != "sdm" else 0
    print(f"K={len(targets)} N_s={codebook.state_count} method={args.method} "
          f"destructive_cells={destructive}", file=sys.stderr)
    return EXIT_OK


def cmd_pattern(args) -> int:
    grid = _grid(args)
    codebook = canonical_codebook(args.states)
    targets = None
    if args.profile:
        try:
            states, n_states, amplitude = exports.parse_state_matrix(_read(args.profile), None)
        except (json.JSONDecodeError, KeyError) as exc:
            raise CliError(f"malformed profile file: {exc}", EXIT_VALIDATION) from None
        if n_states is not None:
            codebook = canonical_codebook(n_states)
        profile = exports.profile_from_states(grid, states, codebook)
        if amplitude is not None:
            profile = ComplexProfile(grid, amplitude, profile.phase)
    else:
        targets = _targets(args.targets)
        profile, _, _ = _synthesize(grid, targets, args.method, args.axis, codebook)
    pattern = farfield.radiation_pattern(profile, grid, farfield.AngleGrid.uniform(args.angle_res_deg))
    metrics = farfield.pattern_metrics(pattern, profile, args.efficiency, targets)
    extra = {"n_states": codebook.state_count, "angle_res_deg": args.angle_res_deg}
    if targets is not None:
        extra["targets"] = json.loads(exports.targets_to_json(targets))
    metrics_text = exports.metrics_json(metrics, extra)
    if args.format == "json":
        _emit(metrics_text, args.out)
        return EXIT_OK
    _emit(exports.pattern_csv(pattern), args.out)
    metrics_path = args.metrics or (f"{args.out}.metrics.json" if args.out else None)
    if metrics_path:
        _emit(metrics_text, metrics_path)
    else:
        sys.stderr.write(metrics_text + "\n")
    return EXIT_OK


def _load_scenario(args):
    if args.scenario:
        try:
            s = scen.scenario_from_dict(json.loads(_read(args.scenario)))
        except json.JSONDecodeError as exc:
            raise CliError(f"malformed scenario JSON: {exc}", EXIT_VALIDATION) from None
    else:
        s = scen.bundled_scenario(args.kind)
    if args.angle_res_deg != s.angle_resolution_deg:
        s = replace(s, angle_resolution_deg=args.angle_res_deg)
    if args.calibrate_bps is not None:
        s = scen.calibrate_bandwidth(s, args.calibrate_bps)
    return s


def _report_text(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([scen.report_to_dict(r) for r in reports], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(scen.REPORT_COLUMNS)
    for row in scen.report_rows(reports):
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def cmd_scenario(args) -> int:
    s = _load_scenario(args)
    if not 1 <= args.ue_count <= len(s.ues):
        raise CliError(f"K must be in [1, {len(s.ues)}]", EXIT_VALIDATION)
    rep = scen.evaluate(s, args.method, args.ue_count, args.offset, fading=args.fading,
                        drops=args.drops, seed=args.seed)
    _emit(_report_text([rep], args.format), args.out)
    return EXIT_OK


def _int_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-", 1))
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    return out


def cmd_sweep(args) -> int:
    s = _load_scenario(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    ks = _int_range(args.k_range)
    offsets = [float(x) for x in args.offsets.split(",") if x.strip()]
    reports = scen.sweep(s, methods, ks, offsets, fading=args.fading, drops=args.drops, seed=args.seed)
    _emit(_report_text(reports, args.format), args.out)
    return EXIT_OK


def cmd_tdm(args) -> int:
    budget = TdmBudget(args.groups, args.ugd_us * 1e-6, args.reconfig_us * 1e-6)
    sl = coding.tdm_subframe_length(budget)
    ok = coding.tdm_within_budget(budget, args.limit_ms * 1e-3)
    if args.format == "json":
        text = json.dumps({"user_groups": args.groups, "subframe_length_s": sl,
                           "limit_s": args.limit_ms * 1e-3, "within_budget": ok}, indent=2) + "\n"
    else:
        text = f"user_groups,subframe_length_s,limit_s,within_budget\n{args.groups},{sl!r},{args.limit_ms * 1e-3!r},{ok}\n"
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {"code": cmd_code, "pattern": cmd_pattern, "scenario": cmd_scenario, "sweep": cmd_sweep,
            "tdm": cmd_tdm}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except farfield.DegeneratePatternError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
