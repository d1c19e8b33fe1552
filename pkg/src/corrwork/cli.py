"""Command-line front end: sweeps, CHSH reports, engine runs, verification.

Subcommands: sweep, chsh, optimize-chsh, energetic-chsh, hierarchy,
robustness, szilard, verify.  Law names are classical, quantum,
superquantum, or table:<path> for a CSV-backed tabulated law.

Conventions:
  - scalar reports are JSON on stdout, sweeps are CSV files
  - floats are emitted with 10 significant digits
  - work is reported in k_B*T units; pass --temperature to add joules
  - exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error

Output depends only on the arguments (plus --seed where sampling is
involved), so identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from .energetics import (
    energetic_chsh,
    fit_decay_exponent,
    hierarchy_report,
)
from .information import LN2, binary_entropy, mutual_information, mutual_information_law
from .laws import Angle, CorrelationLaw, tabulated_from_csv
from .nonlocality import (
    TSIRELSON_BOUND,
    ChshSettings,
    chsh_operator_norm,
    chsh_value,
    lhv_deterministic_max,
    maximize_chsh,
)
from .rng import RandomStream
from .szilard import EngineConfig, expected_work, optimal_partition, simulate
from ._version import __version__

#: exact SI Boltzmann constant, J/K; used only for presentation
BOLTZMANN_J_PER_K = 1.380649e-23

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    """Bad arguments detected after parsing; maps to exit code 2."""


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _round_floats(obj):
    """Clamp every float in a JSON-ready structure to 10 significant digits."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(_round_floats(obj), indent=2, sort_keys=True) + "\n")


def _parse_law(name: str) -> CorrelationLaw:
    if name.startswith("table:"):
        path = name[len("table:"):]
        if not path:
            raise UsageError("table law needs a path: table:<path>")
        try:
            return tabulated_from_csv(path)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    try:
        return CorrelationLaw.from_name(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_settings(text: str | None) -> ChshSettings:
    if text is None:
        return ChshSettings.standard()
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError(
            f"--angles needs four comma-separated radians, got {len(parts)} fields"
        )
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"--angles: non-numeric field in {text!r}") from exc
    try:
        return ChshSettings(*values)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_temperature(temperature: float | None) -> None:
    if temperature is not None and not (temperature > 0.0):
        raise UsageError(f"temperature must be > 0 kelvin, got {temperature}")


def _worker_cap() -> int:
    """Validated CORRWORK_THREADS value (0 = auto).

    All computations currently run in the calling thread; the cap is
    accepted and checked so that setting it is never an error, and results
    never depend on it.
    """
    raw = os.environ.get("CORRWORK_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"CORRWORK_THREADS must be an integer, got {raw!r}") from None
    if cap < 0:
        raise UsageError(f"CORRWORK_THREADS must be >= 0, got {cap}")
    return cap


def _settings_dict(settings: ChshSettings) -> dict:
    return settings.as_dict()


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepTable:
    """Ordered (theta, e, i_nats, w_kT) rows plus generation metadata."""

    rows: tuple[tuple[float, float, float, float], ...]
    law_name: str
    theta_min: float
    theta_max: float
    steps: int
    tool_version: str = __version__


def build_sweep(
    law: CorrelationLaw, theta_min: float, theta_max: float, steps: int
) -> SweepTable:
    if not (0.0 <= theta_min < theta_max <= math.pi):
        raise UsageError(
            f"need 0 <= theta_min < theta_max <= pi, got [{theta_min}, {theta_max}]"
        )
    if steps < 2:
        raise UsageError(f"steps must be >= 2, got {steps}")
    span = theta_max - theta_min
    rows = []
    for i in range(steps):
        theta = theta_min + span * (i / (steps - 1))
        e = law.evaluate(Angle(theta))
        i_nats = mutual_information_law(law, Angle(theta))
        rows.append((theta, e, i_nats, i_nats))
    return SweepTable(
        rows=tuple(rows),
        law_name=law.name,
        theta_min=theta_min,
        theta_max=theta_max,
        steps=steps,
    )


def write_sweep_csv(table: SweepTable, out_path: str) -> None:
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write("theta,e,i_nats,w_kT\n")
            for theta, e, i_nats, w_kt in table.rows:
                handle.write(
                    f"{_fmt(theta)},{_fmt(e)},{_fmt(i_nats)},{_fmt(w_kt)}\n"
                )
    except OSError as exc:
        raise OSError(f"cannot write sweep to {out_path}: {exc}") from exc


def _cmd_sweep(args) -> int:
    law = _parse_law(args.law)
    table = build_sweep(law, args.theta_min, args.theta_max, args.steps)
    write_sweep_csv(table, args.out)
    sys.stdout.write(f"wrote {len(table.rows)} rows to {args.out}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# CHSH reports
# ---------------------------------------------------------------------------

def _cmd_chsh(args) -> int:
    law = _parse_law(args.law)
    settings = _parse_settings(args.angles)
    _emit_json(
        {
            "law": law.name,
            "settings": _settings_dict(settings),
            "s_chsh": chsh_value(law, settings),
            "lhv_deterministic_max": lhv_deterministic_max(settings),
            "operator_norm": chsh_operator_norm(settings),
            "bounds": {"local": 2.0, "tsirelson": TSIRELSON_BOUND, "algebraic": 4.0},
        }
    )
    return EXIT_OK


def _cmd_optimize_chsh(args) -> int:
    law = _parse_law(args.law)
    settings, value = maximize_chsh(law)
    _emit_json(
        {
            "law": law.name,
            "settings": _settings_dict(settings),
            "s_chsh": value,
        }
    )
    return EXIT_OK


def _cmd_energetic_chsh(args) -> int:
    law = _parse_law(args.law)
    settings = _parse_settings(args.angles)
    _check_temperature(args.temperature)
    s_w = energetic_chsh(law, settings)
    report = {
        "law": law.name,
        "settings": _settings_dict(settings),
        "s_w_kT": s_w,
    }
    if args.temperature is not None:
        report["temperature_K"] = args.temperature
        report["s_w_joules"] = s_w * BOLTZMANN_J_PER_K * args.temperature
    _emit_json(report)
    return EXIT_OK


def _cmd_hierarchy(args) -> int:
    settings = _parse_settings(args.angles)
    s_c, s_q, s_s = hierarchy_report(settings)
    _emit_json(
        {
            "settings": _settings_dict(settings),
            "classical_kT": s_c,
            "quantum_kT": s_q,
            "superquantum_kT": s_s,
            "ordering": "strict" if s_c < s_q < s_s else "non-strict",
        }
    )
    return EXIT_OK


def _cmd_robustness(args) -> int:
    anchor = 0.0 if args.anchor == "0" else math.pi
    report: dict = {"anchor_radians": anchor}
    for law in (
        CorrelationLaw.classical(),
        CorrelationLaw.quantum(),
        CorrelationLaw.superquantum(),
    ):
        fit = fit_decay_exponent(law, anchor)
        if fit is None:
            report[law.name] = "flat"
        else:
            report[law.name] = {
                "exponent": fit.exponent,
                "prefactor": fit.prefactor,
                "r_squared": fit.r_squared,
                "window": list(fit.window),
            }
    _emit_json(report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# szilard
# ---------------------------------------------------------------------------

def _cmd_szilard(args) -> int:
    _check_temperature(args.temperature)
    eps = args.epsilon
    if eps > 0.5:
        raise UsageError(
            f"error probability {eps} exceeds 1/2: relabel the bit so that "
            "the prediction is right more often than wrong"
        )
    if eps < 0.0:
        raise UsageError(f"error probability must be >= 0, got {eps}")

    boundary = False
    if args.optimal:
        opt = optimal_partition(eps)
        x = opt.x_opt
        boundary = opt.boundary
    else:
        x = args.x

    report: dict = {
        "epsilon": eps,
        "x": x,
        "optimal": bool(args.optimal),
        "seed": args.seed,
        "n": args.trials,
        "bound_kT": LN2 - binary_entropy(eps),
    }
    if boundary:
        # eps = 0 with the boundary partition: every cycle extracts ln 2
        report["boundary_optimum"] = True
        report["mean_work_kT"] = LN2
        report["std_error"] = 0.0
        report["expected_work_kT"] = LN2
    else:
        config = EngineConfig(
            error_prob=eps, partition_fraction=x, trials=args.trials, seed=args.seed
        )
        result = simulate(config)
        report["mean_work_kT"] = result.mean_work_kT
        report["std_error"] = result.std_error
        report["expected_work_kT"] = expected_work(eps, x)
    if args.temperature is not None:
        scale = BOLTZMANN_J_PER_K * args.temperature
        report["temperature_K"] = args.temperature
        report["mean_work_joules"] = report["mean_work_kT"] * scale
        report["bound_joules"] = report["bound_kT"] * scale
    _emit_json(report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _check_abs(checks, name, measured, expected, tol) -> bool:
    ok = abs(measured - expected) <= tol
    checks.append(
        {
            "name": name,
            "measured": measured,
            "expected": expected,
            "tolerance": tol,
            "passed": ok,
        }
    )
    return ok


def _check_le(checks, name, measured, ceiling, tol) -> bool:
    ok = measured <= ceiling + tol
    checks.append(
        {
            "name": name,
            "measured": measured,
            "expected": f"<= {_fmt(ceiling)}",
            "tolerance": tol,
            "passed": ok,
        }
    )
    return ok


def _check_flag(checks, name, measured, expected) -> bool:
    ok = measured == expected
    checks.append(
        {
            "name": name,
            "measured": measured,
            "expected": expected,
            "tolerance": 0,
            "passed": ok,
        }
    )
    return ok


def run_verify(seed: int = 0) -> dict:
    """Full invariant suite; returns the JSON-ready report."""
    checks: list[dict] = []
    suites: dict[str, bool] = {}
    classical = CorrelationLaw.classical()
    quantum = CorrelationLaw.quantum()
    superquantum = CorrelationLaw.superquantum()
    standard = ChshSettings.standard()
    stream = RandomStream(seed)

    # 1. CHSH triple at the standard angles
    s_c = chsh_value(classical, standard)
    s_q = chsh_value(quantum, standard)
    s_s = chsh_value(superquantum, standard)
    ok = _check_abs(checks, "chsh.classical", s_c, 2.0, 1e-12)
    ok &= _check_abs(checks, "chsh.quantum", s_q, TSIRELSON_BOUND, 1e-12)
    ok &= _check_abs(checks, "chsh.superquantum", s_s, 4.0, 0.0)
    suites["chsh"] = ok
    chsh_report = {"classical": s_c, "quantum": s_q, "superquantum": s_s}

    # 2. deterministic local strategies never beat 2
    worst = 0.0
    for _ in range(100):
        angles = [stream.next_uniform() * 2.0 * math.pi for _ in range(4)]
        worst = max(worst, abs(lhv_deterministic_max(ChshSettings(*angles)) - 2.0))
    suites["lhv"] = _check_abs(checks, "lhv.max_deviation_from_2", worst, 0.0, 0.0)
    lhv_report = {"settings_scanned": 100, "max_deviation_from_2": worst}

    # 3. operator-norm scan against the 2*sqrt(2) ceiling
    max_norm = 0.0
    for _ in range(1000):
        angles = [stream.next_uniform() * 2.0 * math.pi for _ in range(4)]
        max_norm = max(max_norm, chsh_operator_norm(ChshSettings(*angles)))
    standard_norm = chsh_operator_norm(standard)
    ok = _check_le(checks, "tsirelson.max_norm", max_norm, TSIRELSON_BOUND, 1e-9)
    ok &= _check_abs(
        checks, "tsirelson.standard_norm", standard_norm, TSIRELSON_BOUND, 1e-9
    )
    suites["tsirelson"] = ok
    tsirelson_report = {
        "settings_scanned": 1000,
        "max_norm": max_norm,
        "standard_norm": standard_norm,
        "bound": TSIRELSON_BOUND,
    }

    # 4. closed-form information curves against the generic route
    grid_n = 10_000
    worst_gap = 0.0
    for law in (classical, quantum, superquantum):
        for i in range(grid_n):
            theta = math.pi * i / (grid_n - 1)
            closed = mutual_information_law(law, Angle(theta))
            generic = mutual_information(law.evaluate(Angle(theta)))
            worst_gap = max(worst_gap, abs(closed - generic))
    ok = _check_abs(checks, "information.closed_vs_generic", worst_gap, 0.0, 1e-12)
    for law in (classical, quantum):
        for theta, tag in ((0.0, "0"), (math.pi, "pi")):
            ok &= _check_abs(
                checks,
                f"information.{law.name}.endpoint_{tag}",
                mutual_information_law(law, Angle(theta)),
                LN2,
                1e-12,
            )
    ok &= _check_abs(
        checks,
        "information.superquantum.at_half_pi",
        mutual_information_law(superquantum, Angle(math.pi / 2.0)),
        0.0,
        0.0,
    )
    ok &= _check_abs(
        checks,
        "information.superquantum.off_half_pi",
        mutual_information_law(superquantum, Angle(1.0)),
        LN2,
        0.0,
    )
    suites["information"] = ok
    information_report = {"grid_points": grid_n, "max_closed_vs_generic_gap": worst_gap}

    # 5. energetic CHSH values and hierarchy
    w_c, w_q, w_s = hierarchy_report(standard)
    expected_c = 2.0 * (LN2 - binary_entropy(0.25))
    expected_q = 2.0 * (LN2 - binary_entropy(math.sin(math.pi / 8.0) ** 2))
    expected_s = 2.0 * LN2
    ok = _check_abs(checks, "energetic_chsh.classical", w_c, expected_c, 1e-9)
    ok &= _check_abs(checks, "energetic_chsh.quantum", w_q, expected_q, 1e-9)
    ok &= _check_abs(checks, "energetic_chsh.superquantum", w_s, expected_s, 1e-9)
    hierarchy = "strict" if w_c < w_q < w_s else "non-strict"
    ok &= _check_flag(checks, "energetic_chsh.hierarchy", hierarchy, "strict")
    for law, value in ((classical, w_c), (quantum, w_q), (superquantum, w_s)):
        reduced = abs(
            3.0 * mutual_information_law(law, Angle(math.pi / 4.0))
            - mutual_information_law(law, Angle(3.0 * math.pi / 4.0))
        )
        ok &= _check_abs(
            checks, f"energetic_chsh.{law.name}.reduced_form", value, reduced, 1e-12
        )
    suites["energetic_chsh"] = ok
    energetic_report = {
        "classical": w_c,
        "quantum": w_q,
        "superquantum": w_s,
        "hierarchy": hierarchy,
    }

    # 6. Szilard engine: saturation, second law, Monte Carlo consistency
    worst_sat = 0.0
    for k in range(1, 11):
        eps = 0.05 * k
        opt = optimal_partition(eps)
        worst_sat = max(worst_sat, abs(opt.w_opt_kT - (LN2 - binary_entropy(eps))))
    ok = _check_abs(checks, "szilard.saturation_gap", worst_sat, 0.0, 1e-12)
    worst_excess = -math.inf
    for i in range(50):
        eps = 0.5 * i / 49.0
        bound = LN2 - binary_entropy(eps)
        for j in range(50):
            x = (j + 1) / 51.0
            worst_excess = max(worst_excess, expected_work(eps, x) - bound)
    ok &= _check_le(checks, "szilard.max_bound_excess", worst_excess, 0.0, 1e-12)
    mc = simulate(
        EngineConfig(error_prob=0.25, partition_fraction=0.75, trials=10**6,
                     seed=seed + 11)
    )
    mc_gap = abs(mc.mean_work_kT - expected_work(0.25, 0.75))
    ok &= _check_le(checks, "szilard.mc_gap_vs_4se", mc_gap, 4.0 * mc.std_error, 0.0)
    suites["szilard"] = ok
    szilard_report = {
        "saturation_gap": worst_sat,
        "max_bound_excess": worst_excess,
        "mc_mean_kT": mc.mean_work_kT,
        "mc_std_error": mc.std_error,
    }

    # 7. misalignment robustness exponents
    fit_c = fit_decay_exponent(classical, 0.0)
    fit_q = fit_decay_exponent(quantum, 0.0)
    fit_s = fit_decay_exponent(superquantum, 0.0)
    assert fit_c is not None and fit_q is not None
    ok = _check_abs(checks, "robustness.classical.exponent", fit_c.exponent, 1.0, 0.005)
    ok &= _check_abs(
        checks, "robustness.classical.prefactor", fit_c.prefactor, 2.0 / math.pi, 1e-3
    )
    ok &= _check_le(checks, "robustness.classical.r2_deficit", 1.0 - fit_c.r_squared,
                    0.001, 0.0)
    ok &= _check_abs(checks, "robustness.quantum.exponent", fit_q.exponent, 2.0, 0.01)
    ok &= _check_le(checks, "robustness.quantum.r2_deficit", 1.0 - fit_q.r_squared,
                    0.001, 0.0)
    ok &= _check_flag(checks, "robustness.superquantum",
                      "flat" if fit_s is None else "fitted", "flat")
    suites["robustness"] = ok
    robustness_report = {
        "classical": {"exponent": fit_c.exponent, "prefactor": fit_c.prefactor,
                      "r_squared": fit_c.r_squared},
        "quantum": {"exponent": fit_q.exponent, "r_squared": fit_q.r_squared},
        "superquantum": "flat",
    }

    return {
        "passed": all(suites.values()),
        "suites_total": len(suites),
        "suites_passed": sum(suites.values()),
        "seed": seed,
        "chsh": chsh_report,
        "lhv": lhv_report,
        "tsirelson": tsirelson_report,
        "mutual_information": information_report,
        "energetic_chsh": energetic_report,
        "szilard": szilard_report,
        "robustness": robustness_report,
        "checks": checks,
    }


def _cmd_verify(args) -> int:
    report = run_verify(seed=args.seed)
    _emit_json(report)
    if not report["passed"]:
        failing = [c["name"] for c in report["checks"] if not c["passed"]]
        sys.stderr.write("failed checks: " + ", ".join(failing) + "\n")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrwork",
        description="Correlation laws, CHSH parameters, and correlation-powered work.",
    )
    parser.add_argument("--version", action="version", version=f"corrwork {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_law(p):
        p.add_argument("--law", required=True,
                       help="classical | quantum | superquantum | table:<path>")

    def add_angles(p):
        p.add_argument("--angles", default=None,
                       help="four comma-separated radians phi_a,phi_a',phi_b,phi_b' "
                            "(default: standard CHSH angles)")

    def add_seed(p, default=0):
        p.add_argument("--seed", type=int, default=default,
                       help=f"random stream seed (default {default})")

    p = sub.add_parser("sweep", help="tabulate theta, E, I, W over an angle grid")
    add_law(p)
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=math.pi)
    p.add_argument("--steps", type=int, default=181)
    p.add_argument("--out", required=True, help="output CSV path")
    add_seed(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("chsh", help="CHSH parameter for a law at given angles")
    add_law(p)
    add_angles(p)
    add_seed(p)
    p.set_defaults(func=_cmd_chsh)

    p = sub.add_parser("optimize-chsh", help="maximize the CHSH parameter over angles")
    add_law(p)
    add_seed(p)
    p.set_defaults(func=_cmd_optimize_chsh)

    p = sub.add_parser("energetic-chsh", help="work-potential CHSH combination")
    add_law(p)
    add_angles(p)
    p.add_argument("--temperature", type=float, default=None,
                   help="bath temperature in kelvin for joule output")
    add_seed(p)
    p.set_defaults(func=_cmd_energetic_chsh)

    p = sub.add_parser("hierarchy", help="energetic CHSH for all three laws")
    add_angles(p)
    add_seed(p)
    p.set_defaults(func=_cmd_hierarchy)

    p = sub.add_parser("robustness", help="misalignment decay exponents per law")
    p.add_argument("--anchor", choices=("0", "pi"), default="0",
                   help="perfect-correlation anchor angle (default 0)")
    add_seed(p)
    p.set_defaults(func=_cmd_robustness)

    p = sub.add_parser("szilard", help="Monte Carlo correlation-powered engine run")
    p.add_argument("--epsilon", type=float, required=True,
                   help="memory-bit error probability in [0, 1/2]")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--x", type=float, default=None,
                       help="final partition fraction on the predicted side, in (0, 1)")
    group.add_argument("--optimal", action="store_true",
                       help="use the work-maximizing partition x = 1 - epsilon")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--temperature", type=float, default=None,
                   help="bath temperature in kelvin for joule output")
    add_seed(p)
    p.set_defaults(func=_cmd_szilard)

    p = sub.add_parser("verify", help="run the invariant suite; exit 0 iff all pass")
    add_seed(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _worker_cap()
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"corrwork: error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"corrwork: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"corrwork: i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
