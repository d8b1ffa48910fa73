"""Command-line entry point: ``powres {quadratic,cubic,biquadratic,audit,scan}``.

Exit status is 0 when every report passed the oracle, 1 when any harvested
prime failed it, and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction

from .audit import chebyshev_sum_audit
from .errors import PowresError
from .numtheory import as_fraction, as_modulus
from .pipeline import FAMILY_CLASS, case_for, random_primes, run
from .report import Case, ResidueReport

JSON_SAFE_INT = 2**53
SCAN_COLUMNS = [
    "p",
    "case",
    "epsilon",
    "x_limit",
    "harvested_count",
    "threshold",
    "meets_threshold",
    "oracle_verified",
]


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    epsilon: Fraction = Fraction(1, 5)
    delta: Fraction | None = None
    x_override: int | None = None
    bits: int | None = None
    count: int | None = None
    case: str = "quadratic"
    format: str = "json"
    seed: int | None = None
    workers: int = 1
    chebyshev_x: int = 1000


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= JSON_SAFE_INT else obj
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return float(obj)


def report_dict(report: ResidueReport, audit=None) -> dict:
    d = {
        "p": report.p,
        "case": report.case.value,
        "epsilon": report.epsilon,
        "x_limit": report.x_limit,
        "q_bound": report.q_bound,
        "witnesses": [w.as_dict() for w in report.witnesses if not w.excluded],
        "excluded": [w.as_dict() for w in report.excluded],
        "harvested_count": report.harvested_count,
        "oracle_verified": report.oracle_verified,
        "threshold": report.threshold,
        "guaranteed_regime": report.guaranteed_regime,
        "deviations": list(report.deviations),
        "x_theoretical": report.x_theoretical,
        "window": [report.window_low, report.window_high],
        "delta": report.delta,
        "parameters": report.parameters,
        "harvested": report.harvested,
        "offenders": list(report.offenders),
        "residue_flags": report.residue_flags,
    }
    if audit is not None:
        d["audit"] = audit.as_dict()
    return d


def scan_row(report: ResidueReport, audit) -> dict:
    return {
        "p": report.p,
        "case": report.case.value,
        "epsilon": float(report.epsilon),
        "x_limit": report.x_limit,
        "harvested_count": report.harvested_count,
        "threshold": f"{report.threshold:.12g}",
        "meets_threshold": audit.meets_threshold,
        "oracle_verified": report.oracle_verified,
    }


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _text_report(d: dict) -> str:
    lines = []
    for key in ("p", "case", "epsilon", "x_limit", "x_theoretical", "q_bound", "window",
                "harvested_count", "harvested", "threshold", "oracle_verified",
                "guaranteed_regime", "offenders"):
        lines.append(f"{key}: {d[key]}")
    for dev in d["deviations"]:
        lines.append(f"note: {dev}")
    return "\n".join(lines) + "\n"


def _single(cfg: RunConfig) -> tuple[str, bool]:
    if cfg.p is None:
        raise PowresError(f"{cfg.command} needs --p")
    p = as_modulus(cfg.p).p
    case = case_for(cfg.command, p, cfg.delta)
    report, audit = run(p, case, cfg.epsilon, delta=cfg.delta, x_override=cfg.x_override,
                        workers=cfg.workers)
    d = report_dict(report, audit)
    if cfg.format == "json":
        out = json.dumps(_jsonable(d), indent=2) + "\n"
    elif cfg.format == "csv":
        out = _csv([scan_row(report, audit)], SCAN_COLUMNS)
    else:
        out = _text_report(d)
    return out, report.oracle_verified


def _scan_one(args):
    p, family, epsilon, delta = args
    report, audit = run(p, case_for(family, p, delta), epsilon, delta=delta)
    return scan_row(report, audit)


def _scan(cfg: RunConfig) -> tuple[str, bool]:
    if cfg.bits is None or cfg.count is None:
        raise PowresError("scan needs --bits and --count")
    if cfg.case not in FAMILY_CLASS:
        raise PowresError(f"unknown case family {cfg.case!r}")
    cls = FAMILY_CLASS[cfg.case]
    if cfg.delta is not None:
        cls = (4, 3)
    primes = random_primes(cfg.bits, cfg.count, cfg.seed, cls)
    jobs = [(p, cfg.case, cfg.epsilon, cfg.delta) for p in primes]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_scan_one, jobs))
    else:
        rows = [_scan_one(j) for j in jobs]
    ok = all(r["oracle_verified"] for r in rows)
    if cfg.format == "csv":
        return _csv(rows, SCAN_COLUMNS), ok
    if cfg.format == "json":
        return json.dumps(_jsonable(rows), indent=2) + "\n", ok
    width = [max(len(c), *(len(str(r[c])) for r in rows)) for c in SCAN_COLUMNS]
    lines = ["  ".join(c.ljust(w) for c, w in zip(SCAN_COLUMNS, width))]
    lines += ["  ".join(str(r[c]).ljust(w) for c, w in zip(SCAN_COLUMNS, width)) for r in rows]
    return "\n".join(lines) + "\n", ok


def _audit(cfg: RunConfig) -> tuple[str, bool]:
    if cfg.p is None:
        raise PowresError("audit needs --p")
    p = as_modulus(cfg.p).p
    cases = []
    if p % 4 == 1:
        cases += [Case.QUAD_1_MOD_4, Case.BIQUADRATIC]
    elif cfg.delta is not None:
        cases.append(Case.QUAD_3_MOD_4_SPECIAL)
    else:
        cases.append(Case.QUAD_3_MOD_4)
    if p % 3 == 1:
        cases.append(Case.CUBIC)
    audits, ok = [], True
    for case in sorted(cases, key=lambda c: c.value):
        report, audit = run(p, case, cfg.epsilon, delta=cfg.delta, x_override=cfg.x_override,
                            workers=cfg.workers)
        ok &= report.oracle_verified
        audits.append(dict(audit.as_dict(), oracle_verified=report.oracle_verified))
    cheb = chebyshev_sum_audit(cfg.chebyshev_x)
    cheb_d = {"x": cheb.x, "lhs": float(cheb.lhs), "rhs": float(cheb.rhs), "holds": cheb.holds}
    if cfg.format == "csv":
        cols = ["case", "p", "epsilon", "threshold", "c1", "lower_bound_expression",
                "empirical_count", "meets_threshold", "guaranteed_regime", "oracle_verified"]
        return _csv(audits, cols), ok
    if cfg.format == "json":
        return json.dumps(_jsonable({"audits": audits, "chebyshev": cheb_d}), indent=2) + "\n", ok
    lines = [f"{a['case']}: count {a['empirical_count']} vs threshold {a['threshold']:.6g}, "
             f"bound expression {a['lower_bound_expression']:.6g}, "
             f"regime {a['guaranteed_regime']}" for a in audits]
    lines.append(f"chebyshev x={cheb.x}: {cheb_d['lhs']:.10f} <= {cheb_d['rhs']:.10f}: {cheb.holds}")
    return "\n".join(lines) + "\n", ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file with RunConfig fields; flags win")
        sp.add_argument("--epsilon", type=as_fraction, default=None)
        sp.add_argument("--delta", type=as_fraction, default=None)
        sp.add_argument("--x-override", type=int, default=None, dest="x_override")
        sp.add_argument("--format", choices=["json", "csv", "text"], default=None)
        sp.add_argument("--workers", type=int, default=None)

    for name in ("quadratic", "cubic", "biquadratic", "audit"):
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, default=None)
        common(sp)
        if name == "audit":
            sp.add_argument("--chebyshev-x", type=int, default=None, dest="chebyshev_x")
    sp = sub.add_parser("scan")
    sp.add_argument("--case", choices=sorted(FAMILY_CLASS), default=None)
    sp.add_argument("--bits", type=int, default=None)
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    common(sp)
    return parser


def make_config(ns: argparse.Namespace) -> RunConfig:
    merged = {}
    if getattr(ns, "config", None):
        with open(ns.config, encoding="utf-8") as fh:
            merged.update(json.load(fh))
    for f in fields(RunConfig):
        v = getattr(ns, f.name, None)
        if v is not None:
            merged[f.name] = v
    merged["command"] = ns.command
    for key in ("epsilon", "delta"):
        if merged.get(key) is not None:
            merged[key] = as_fraction(merged[key])
    for key in ("p", "x_override", "bits", "count", "seed", "workers", "chebyshev_x"):
        if merged.get(key) is not None:
            merged[key] = int(merged[key])
    unknown = set(merged) - {f.name for f in fields(RunConfig)}
    if unknown:
        raise PowresError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**merged)


def execute(cfg: RunConfig) -> tuple[str, int]:
    """Run one configuration; returns ``(serialized output, exit code)``."""
    try:
        if cfg.command == "scan":
            out, ok = _scan(cfg)
        elif cfg.command == "audit":
            out, ok = _audit(cfg)
        else:
            out, ok = _single(cfg)
    except (PowresError, ValueError) as exc:
        return f"error: {exc}\n", 2
    return out, 0 if ok else 1


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = make_config(ns)
    except (PowresError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    out, code = execute(cfg)
    (sys.stderr if code == 2 else sys.stdout).write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
