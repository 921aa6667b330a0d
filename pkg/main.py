import argparse
import math
import sys
import traceback
import warnings
from pathlib import Path
from typing import Dict, List, Optional

from config.reports import ScanReports, SequenceReports, SpectrumReports, TrajectoryReports
from config.settings import Settings
from rotor.errors import DomainError, RotorError
from rotor.fidelity import scan
from rotor.oracle import GENERAL, SYMMETRIC, OptimizationProblem, compare_with_sequence, solve
from rotor.pulse import SQRT3, OffResonance
from rotor.spectrum import MODES, SpinSystem, acquire, excite
from rotor.synthesis import SynthesisRequest, synthesize, verify
from rotor.trajectory import (
    INITIAL_STATES,
    export_grapefruit,
    figure_panels,
    pulses_for_mode,
    resolve_projection,
    trace,
)
from utils.documents import load_sequence, load_spin_system, save_sequence
from utils.exports import ResultWriter, provenance_json

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2

NEGATIVE_SQRT3 = "neg-sqrt3"


def parse_offset(token: str) -> Optional[float]:
    """
    Off-resonance fraction from a command-line token: a decimal, "sqrt3", "-sqrt3", or "-" for none.
    """
    text = token.strip().lower()
    if text == "-":
        return None
    if text == "sqrt3":
        return SQRT3
    if text in ("-sqrt3", NEGATIVE_SQRT3):
        return -SQRT3
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, 'sqrt3' or '-', got {token!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {token!r}")
    return value


def parse_required_offset(token: str) -> float:
    value = parse_offset(token)
    if value is None:
        raise argparse.ArgumentTypeError("an off-resonance fraction is required here")
    return value


def parse_degrees(token: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an angle in degrees, got {token!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite angle, got {token!r}")
    return value


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _protect_negative_tokens(argv: List[str]) -> List[str]:
    # argparse reads "-sqrt3" and exponent forms such as "-1e-3" as option flags;
    # a leading space keeps a token positional and float() ignores it
    out = []
    for a in argv:
        if a.lower() == "-sqrt3":
            out.append(NEGATIVE_SQRT3)
        elif a.startswith("-") and _is_number(a):
            out.append(" " + a)
        else:
            out.append(a)
    return out


def _deg(value: float) -> float:
    return math.degrees(value)


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotten",
        description="Design and check ROTTEN composite pulses that compensate resonance offset at +/- f*.",
    )
    parser.add_argument("--threads", type=int, default=settings.threads,
                        help=f"worker cap for scans, restarts and per-line excitation (default {settings.threads})")
    parser.add_argument("--quiet", action="store_true", help="do not announce written files")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("synth", help="synthesize a sequence and write it as JSON")
    p.add_argument("theta_deg", type=parse_degrees)
    p.add_argument("phi_deg", type=parse_degrees)
    p.add_argument("f_star", type=parse_required_offset, nargs="?",
                   help="tailoring offset: decimal or sqrt3 (omit when --delta-hz/--nu1-hz are given)")
    p.add_argument("--delta-hz", type=float, help="resonance offset in Hz")
    p.add_argument("--nu1-hz", type=float, help="RF nutation rate in Hz")
    p.add_argument("--branch", choices=("positive", "negative"), default="positive")
    p.add_argument("--out", default=None, help="sequence file (default <output dir>/sequence.json)")

    p = sub.add_parser("scan", help="rotor fidelity of simple and ROTTEN pulses over an offset range")
    p.add_argument("theta_deg", type=parse_degrees)
    p.add_argument("phi_deg", type=parse_degrees)
    p.add_argument("f_star", type=parse_required_offset)
    p.add_argument("f_min", type=parse_required_offset, nargs="?", default=settings.scan_f_min)
    p.add_argument("f_max", type=parse_required_offset, nargs="?", default=settings.scan_f_max)
    p.add_argument("n", type=int, nargs="?", default=settings.scan_points)
    p.add_argument("--out", default=None, help="scan file (default <output dir>/scan.csv)")

    p = sub.add_parser("trajectory", help="Bloch trajectory drawings and sample dump")
    p.add_argument("mode", choices=("simple", "rotten"))
    p.add_argument("theta_deg", type=parse_degrees)
    p.add_argument("phi_deg", type=parse_degrees)
    p.add_argument("f_star", type=parse_offset, help="tailoring offset, '-' in simple mode")
    p.add_argument("f_eval", type=parse_required_offset, help="offset the pulses are played at")
    p.add_argument("initial", choices=sorted(INITIAL_STATES))
    p.add_argument("--samples", type=int, default=settings.samples_per_pulse, help="steps per pulse")
    p.add_argument("--projections", default="xy,xz,yz", help="comma separated, from xy, xz, yz")
    p.add_argument("--out-prefix", default=None, help="(default <output dir>/trajectory)")

    p = sub.add_parser("spectrum", help="two-line excitation and per-line phase errors")
    p.add_argument("mode", choices=MODES)
    p.add_argument("config", nargs="?", default="-", help="spin-system JSON, '-' for the default two-line system")
    p.add_argument("--theta-deg", type=parse_degrees, default=90.0, help="nominal flip angle")
    p.add_argument("--out", default=None, help="spectrum file (default <output dir>/spectrum.csv)")

    p = sub.add_parser("verify", help="check a sequence file against its target")
    p.add_argument("sequence")
    p.add_argument("--numeric", action="store_true", help="also run the numerical search")
    p.add_argument("--seed", type=int, default=settings.oracle_seed)
    p.add_argument("--budget", type=int, default=settings.oracle_budget)
    p.add_argument("--parameterization", choices=(SYMMETRIC, GENERAL), default=SYMMETRIC)

    p = sub.add_parser("panels", help="write all twelve trajectory panels")
    p.add_argument("--theta-deg", type=parse_degrees, default=90.0)
    p.add_argument("--phi-deg", type=parse_degrees, default=0.0)
    p.add_argument("--f-star", type=parse_required_offset, default=SQRT3)
    p.add_argument("--samples", type=int, default=settings.samples_per_pulse)
    p.add_argument("--projection", default="xy")
    p.add_argument("--out-dir", default=None, help="(default <output dir>/panels)")
    return parser


def run_config(args: argparse.Namespace, settings: Settings) -> Dict:
    """Effective invocation config echoed into every output"""
    config = {k: v for k, v in vars(args).items() if k != "quiet"}
    if args.command == "verify" and args.numeric:
        config["oracle"] = {"restarts": settings.oracle_restarts, "restart_batch": settings.oracle_batch}
    return config


def _output(path: Optional[str], settings: Settings, default_name: str) -> Path:
    return Path(path) if path else Path(settings.output_dir) / default_name


def cmd_synth(args, settings: Settings, config: Dict) -> int:
    if args.delta_hz is not None or args.nu1_hz is not None:
        if args.delta_hz is None or args.nu1_hz is None:
            raise DomainError("--delta-hz and --nu1-hz must be given together")
        if args.f_star is not None:
            raise DomainError("give either f_star or --delta-hz/--nu1-hz, not both")
        f_star = OffResonance.from_frequencies(args.delta_hz, args.nu1_hz).f
    elif args.f_star is None:
        raise DomainError("f_star is required unless --delta-hz and --nu1-hz are given")
    else:
        f_star = args.f_star

    branch = 1 if args.branch == "positive" else -1
    seq = synthesize(SynthesisRequest(
        theta=math.radians(args.theta_deg),
        phi=math.radians(args.phi_deg),
        f_star=f_star,
        branch=branch,
    ))
    report = verify(seq)

    print(SequenceReports.synth_header(args.theta_deg, args.phi_deg, seq.f_star, branch))
    print(SequenceReports.pulse_table([_deg(p.theta) for p in seq.pulses], [_deg(p.phi) for p in seq.pulses]))
    print(SequenceReports.verify_report(report))
    save_sequence(_output(args.out, settings, "sequence.json"), seq, provenance=config, quiet=args.quiet)
    return EXIT_OK


def cmd_scan(args, settings: Settings, config: Dict) -> int:
    result = scan(
        target=(math.radians(args.theta_deg), math.radians(args.phi_deg)),
        f_star=args.f_star,
        f_range=(args.f_min, args.f_max),
        n_points=args.n,
        threads=args.threads,
    )
    rows = []
    for f in (-result.f_star, 0.0, result.f_star):
        i = result.index_of(f)
        if i is not None:
            rows.append((f, float(result.lambda_simple[i]), float(result.lambda_composite[i])))
    print(ScanReports.anchors(rows))
    ResultWriter(config, quiet=args.quiet).write_scan(_output(args.out, settings, "scan.csv"), result)
    return EXIT_OK


def cmd_trajectory(args, settings: Settings, config: Dict) -> int:
    projections = [resolve_projection(name.strip()) for name in args.projections.split(",") if name.strip()]
    if not projections:
        raise DomainError("at least one projection is required")
    pulses = pulses_for_mode(args.mode, math.radians(args.theta_deg), math.radians(args.phi_deg), args.f_star)
    t = trace(pulses, args.f_eval, INITIAL_STATES[args.initial], samples_per_pulse=args.samples)

    prefix = args.out_prefix or str(Path(settings.output_dir) / "trajectory")
    comment = f"provenance: {provenance_json(config)}"
    title = f"{args.mode} {args.theta_deg:g} deg, f={args.f_eval:.4g}, {args.initial}"
    for key, _ in projections:
        path = export_grapefruit(t, key, f"{prefix}_{key.split('-')[-1]}.svg", title=title, comment=comment)
        if not args.quiet:
            print(f"✅ Wrote {path}")
    ResultWriter(config, quiet=args.quiet).write_trajectory(f"{prefix}.csv", t)
    print(TrajectoryReports.endpoint(args.initial, t.endpoint))
    return EXIT_OK


def cmd_spectrum(args, settings: Settings, config: Dict) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        system = SpinSystem.glycine_like() if args.config == "-" else load_spin_system(args.config)
        vectors = excite(system, args.mode, target_theta=math.radians(args.theta_deg), threads=args.threads)
        spectrum = acquire(system, vectors)
    for w in caught:
        print(f"⚠️ {w.message}")

    print(SpectrumReports.phases(args.mode, spectrum.line_offsets_hz, spectrum.phases_deg))
    ResultWriter(config, quiet=args.quiet).write_spectrum(_output(args.out, settings, "spectrum.csv"), spectrum)
    return EXIT_OK


def cmd_verify(args, settings: Settings, config: Dict) -> int:
    seq = load_sequence(args.sequence)
    print(SequenceReports.pulse_table([_deg(p.theta) for p in seq.pulses], [_deg(p.phi) for p in seq.pulses]))
    print(SequenceReports.verify_report(verify(seq)))

    if args.numeric:
        theta, phi = seq.target
        problem = OptimizationProblem(theta=theta, phi=phi, f_star=seq.f_star,
                                      parameterization=args.parameterization)
        result = solve(problem, seed=args.seed, budget=args.budget,
                       settings=settings.oracle_settings(), threads=args.threads)
        agreement = compare_with_sequence(result, seq)
        print(SequenceReports.oracle_report(result.converged, result.objective_value, result.iterations, agreement))
        print(SequenceReports.pulse_table([_deg(p.theta) for p in result.pulses],
                                          [_deg(p.phi) for p in result.pulses]))
    return EXIT_OK


def cmd_panels(args, settings: Settings, config: Dict) -> int:
    key, _ = resolve_projection(args.projection)
    out_dir = Path(args.out_dir) if args.out_dir else Path(settings.output_dir) / "panels"
    writer = ResultWriter(config, quiet=args.quiet)
    comment = f"provenance: {provenance_json(config)}"
    theta, phi = math.radians(args.theta_deg), math.radians(args.phi_deg)

    for panel in figure_panels(abs(args.f_star)):
        pulses = pulses_for_mode(panel.mode, theta, phi, args.f_star)
        t = trace(pulses, panel.f_eval, INITIAL_STATES[panel.initial], samples_per_pulse=args.samples)
        stem = out_dir / f"panel_{panel.label}"
        title = f"({panel.label}) {panel.mode} f={panel.f_eval:+.4g} {panel.initial}"
        path = export_grapefruit(t, key, f"{stem}.svg", title=title, comment=comment)
        if not args.quiet:
            print(f"✅ Wrote {path}")
        writer.write_trajectory(f"{stem}.csv", t)
        print(TrajectoryReports.endpoint(f"({panel.label}) {panel.mode} f={panel.f_eval:+.4f} {panel.initial}",
                                         t.endpoint))
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "scan": cmd_scan,
    "trajectory": cmd_trajectory,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "panels": cmd_panels,
}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        settings = Settings.from_env()
    except ValueError as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_USAGE

    parser = build_parser(settings)
    try:
        args = parser.parse_args(_protect_negative_tokens(argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE
    if args.threads < 1:
        print(f"❌ --threads must be at least 1, got {args.threads}")
        return EXIT_USAGE

    config = run_config(args, settings)
    try:
        return COMMANDS[args.command](args, settings, config)
    except RotorError as e:
        print(f"❌ {e}")
        return EXIT_USAGE
    except Exception as e:
        print(f"❌ Internal error: {e}")
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
