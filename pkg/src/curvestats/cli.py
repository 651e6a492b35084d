"""Command-line front end.

Subcommands map one-to-one onto the library drivers: window-scan
experiments (phi, joint, restricted), beta-residue scans, the walk
simulator and its exact enumerations, character-sum checks, the stride
censuses, the Gauss-lemma sweep, the empty-window scan, and the full
verification suite.  Reports serialize to canonical JSON (one stable
object; wall-clock duration lives in a separate meta block) or to CSV
histograms with the fixed header ``a,count,phi_num,phi_den,phi_dec``.

Exit codes: 0 success, 1 hypothesis or validation failure, 2 usage
error.  Randomized subcommands require an explicit --seed.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .charsum import census_m, joint_census, shifted_census, weil_check
from .curvewin import (
    Histogram,
    JointHistogram,
    Rect,
    ScanSpec,
    beta_residue_scan,
    cor4_exceptional,
    curve,
    experiment_thm1,
    experiment_thm2,
    experiment_thm3,
    gauss_lemma_check,
)
from .errors import HypothesisError
from .ffield import FieldSpec, character
from .polyff import poly
from .rwalk import (
    WalkConfig,
    exact_prop21a,
    exact_prop21b,
    exact_prop21c,
    simulate_phi,
)

CSV_HEADER = "a,count,phi_num,phi_den,phi_dec"

# display labels for hypothesis names, used in error messages and reports
HYPOTHESIS_LABELS = {
    "gcd_m_ell": "GCD(m,ℓ)=1",
    "p_equiv_1_mod_ell": "p ≡ 1 (mod ℓ)",
    "P_admissible": "P admissible",
    "P_nonconstant": "P nonconstant",
    "multiplicative_independence": "multiplicative independence",
    "curves_common_field_ell": "common field and ℓ",
    "condition_star": "at most one y per x in the rectangle",
    "no_wraparound": "windows stay inside [0, p-1]",
    "window_len_range": "p - L > I > L",
    "scan_interval_size": "scan interval exceeds sqrt(p)",
    "block_len_regime": "L below log p / (2 log 4d)",
    "block_len_regime_thm3": "L below log p / (2 log log p)",
    "y_interval_alpha": "y-interval proportion recorded",
    "P_not_complete_power": "P is not a complete power",
    "census_r_regime": "r below log p / log(4 deg)",
}


class UsageError(Exception):
    """Malformed configuration; maps to exit code 2."""


# ---------------------------------------------------------------- serialization


def _frac_json(fr) -> dict:
    fr = Fraction(fr)
    return {
        "num": fr.numerator,
        "den": fr.denominator,
        "dec": f"{float(fr):.6f}",
    }


def _hist_json(h: Histogram) -> dict:
    phi = []
    if h.total > 0:
        phi = [{"a": a, **_frac_json(h.phi(a))} for a in range(h.m)]
    return {"m": h.m, "total": h.total, "counts": list(h.counts), "phi": phi}


def _joint_json(jh: JointHistogram) -> dict:
    cells = []
    if jh.total > 0:
        for vec, c in sorted(jh.as_dict().items()):
            cells.append({"a": list(vec), "count": c, **_frac_json(Fraction(c, jh.total))})
    return {"m": jh.m, "k": jh.k, "total": jh.total, "cells": cells}


def _model_json(model) -> dict | None:
    if model is None:
        return None
    return {
        "q50": model.q50,
        "q95": model.q95,
        "q99": model.q99,
        "blocks": model.blocks,
        "trials": model.trials,
    }


def _checks_json(checks) -> list[dict]:
    return [
        {
            "name": c.name,
            "label": HYPOTHESIS_LABELS.get(c.name, c.name),
            "passed": c.passed,
            "fatal": c.fatal,
            "detail": c.detail,
        }
        for c in checks
    ]


def _csv_rows(labels, counts, total) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for label, c in zip(labels, counts):
        fr = Fraction(c, total) if total else Fraction(0)
        out.write(f"{label},{c},{fr.numerator},{fr.denominator},{float(fr):.6f}\n")
    return out.getvalue()


def _report_csv(report: dict) -> str:
    """The CSV rendering of a report's primary histogram."""
    res = report["results"]
    if "histogram" in res and res["histogram"] is not None:
        h = res["histogram"]
        return _csv_rows(range(h["m"]), h["counts"], h["total"])
    if "joint_histogram" in res:
        jh = res["joint_histogram"]
        labels = ["|".join(str(a) for a in cell["a"]) for cell in jh["cells"]]
        counts = [cell["count"] for cell in jh["cells"]]
        return _csv_rows(labels, counts, jh["total"])
    if "r_histogram" in res and res["r_histogram"] is not None:
        h = res["r_histogram"]
        return _csv_rows(range(h["m"]), h["counts"], h["total"])
    if "class_counts" in res:
        counts = res["class_counts"]
        return _csv_rows(range(len(counts)), counts, res["total_steps"])
    raise UsageError("csv format is only available for histogram-producing commands")


def canonical_json(report: dict) -> str:
    """Stable serialization of the deterministic report section."""
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def emit(report: dict, fmt: str, path: str | None, duration: float) -> None:
    if fmt == "csv":
        text = _report_csv(report)
    elif fmt == "json":
        text = json.dumps(
            {"report": report, "meta": {"duration_s": round(duration, 6)}},
            sort_keys=True,
            indent=2,
        )
        text += "\n"
    else:
        raise UsageError(f"unknown output format '{fmt}'")
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- config plumbing


def _parse_poly_field(value, p: int):
    """A polynomial given as '1,0,2' (constant first) or a coefficient list."""
    if isinstance(value, str):
        try:
            coeffs = [int(tok) for tok in value.split(",")]
        except ValueError:
            raise UsageError(f"polynomial '{value}' is not a comma-separated integer list")
    elif isinstance(value, (list, tuple)):
        try:
            coeffs = [int(tok) for tok in value]
        except (TypeError, ValueError):
            raise UsageError(f"polynomial {value!r} is not an integer list")
    else:
        raise UsageError(f"polynomial {value!r} is not an integer list")
    if not coeffs:
        raise UsageError("polynomial needs at least one coefficient")
    return poly(coeffs, p)


def _parse_polys(cfg, p: int):
    raw = cfg.get("poly")
    if raw is None:
        raise UsageError("missing required field 'poly'")
    if isinstance(raw, str) or (raw and isinstance(raw[0], int)):
        raw = [raw]
    return [_parse_poly_field(entry, p) for entry in raw]


def _parse_one_poly(cfg, p: int):
    polys = _parse_polys(cfg, p)
    if len(polys) != 1:
        raise UsageError("this command takes exactly one 'poly'")
    return polys[0]


def _parse_int_list(value, field: str):
    if isinstance(value, str):
        toks = value.split(",")
    elif isinstance(value, (list, tuple)):
        toks = list(value)
    else:
        raise UsageError(f"field '{field}' is not an integer list")
    try:
        return [int(t) for t in toks]
    except (TypeError, ValueError):
        raise UsageError(f"field '{field}' is not an integer list")


def _parse_beta(value) -> Fraction:
    try:
        if isinstance(value, str) and "/" in value:
            num, den = value.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"beta '{value}' is not a rational number")


def _require(cfg: dict, fields) -> None:
    for f in fields:
        if cfg.get(f) is None:
            raise UsageError(f"missing required field '{f}'")


def _require_seed(cfg: dict) -> None:
    if cfg.get("seed") is None:
        raise UsageError("randomized command requires an explicit 'seed'")


def _field(cfg) -> FieldSpec:
    return FieldSpec.from_prime(cfg["p"])


def _scan_spec(cfg: dict, p: int, need_block: bool) -> ScanSpec:
    I = cfg["window"]
    L = cfg.get("block")
    if need_block and L is None:
        raise UsageError("missing required field 'block'")
    x_start = cfg.get("x_start") if cfg.get("x_start") is not None else 0
    scan_len = cfg.get("scan_len")
    if scan_len is None:
        scan_len = p - x_start - I - (L or 0)
    return ScanSpec(x_start=x_start, scan_len=scan_len, window_len=I, block_len=L)


def _rect(cfg: dict, p: int) -> Rect:
    x_lo = cfg.get("x_lo") if cfg.get("x_lo") is not None else 0
    x_hi = cfg.get("x_hi") if cfg.get("x_hi") is not None else p - 1
    _require(cfg, ["y_lo", "y_hi"])
    return Rect(x_lo=x_lo, x_hi=x_hi, y_lo=cfg["y_lo"], y_hi=cfg["y_hi"])


def _experiment_json(rep) -> dict:
    res = {
        "kind": rep.kind,
        "params": rep.params,
        "discrepancy": _frac_json(rep.discrepancy),
        "bound": rep.bound,
        "bound_pass": rep.bound_pass,
        "model": _model_json(rep.model),
        "model_pass": rep.model_pass,
    }
    if rep.histogram is not None:
        res["histogram"] = _hist_json(rep.histogram)
    if rep.joint is not None:
        res["joint_histogram"] = _joint_json(rep.joint)
    return res


# ---------------------------------------------------------------- subcommands


def _cmd_phi(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "m", "poly", "window"])
    _require_seed(cfg)
    fs = _field(cfg)
    P = _parse_one_poly(cfg, fs.p)
    spec = _scan_spec(cfg, fs.p, need_block=True)
    rep = experiment_thm1(
        curve(fs, cfg["ell"], P),
        spec,
        m=cfg["m"],
        trials=cfg["trials"],
        seed=cfg["seed"],
        blocks=cfg.get("blocks"),
        threads=cfg["threads"],
    )
    return _experiment_json(rep), rep.hypotheses


def _cmd_joint(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "m", "poly", "window"])
    _require_seed(cfg)
    fs = _field(cfg)
    polys = _parse_polys(cfg, fs.p)
    spec = _scan_spec(cfg, fs.p, need_block=True)
    rep = experiment_thm2(
        [curve(fs, cfg["ell"], P) for P in polys],
        spec,
        m=cfg["m"],
        trials=cfg["trials"],
        seed=cfg["seed"],
        blocks=cfg.get("blocks"),
        threads=cfg["threads"],
    )
    return _experiment_json(rep), rep.hypotheses


def _cmd_restricted(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "m", "poly", "window"])
    _require_seed(cfg)
    fs = _field(cfg)
    P = _parse_one_poly(cfg, fs.p)
    spec = _scan_spec(cfg, fs.p, need_block=True)
    rect = _rect(cfg, fs.p)
    rep = experiment_thm3(
        curve(fs, cfg["ell"], P),
        rect,
        spec,
        m=cfg["m"],
        trials=cfg["trials"],
        seed=cfg["seed"],
        blocks=cfg.get("blocks"),
        threads=cfg["threads"],
    )
    return _experiment_json(rep), rep.hypotheses


def _cmd_beta(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "beta", "window"])
    fs = _field(cfg)
    spec = _scan_spec(cfg, fs.p, need_block=False)
    scan = beta_residue_scan(fs, _parse_beta(cfg["beta"]), spec, m=cfg.get("m"))
    res = {
        "beta": _frac_json(scan.beta),
        "y_max": scan.y_max,
        "window_len": spec.window_len,
        "positions": int(scan.r_counts.size),
        "partition_ok": bool((scan.r_counts + scan.n_counts == spec.window_len).all()),
        "r_histogram": _hist_json(scan.r_hist) if scan.r_hist else None,
        "n_histogram": _hist_json(scan.n_hist) if scan.n_hist else None,
    }
    return res, []


def _cmd_walk(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["ell", "m", "block"])
    _require_seed(cfg)
    wc = WalkConfig(
        ell=cfg["ell"],
        m=cfg["m"],
        L=cfg["block"],
        trials=cfg["trials"],
        seed=cfg["seed"],
    )
    sim = simulate_phi(wc, threads=cfg["threads"])
    L, trials = wc.L, wc.trials
    counts = [int(round(float(s) * L)) for s in sim.phis.sum(axis=0)]
    res = {
        "ell": wc.ell,
        "m": wc.m,
        "L": L,
        "trials": trials,
        "class_counts": counts,
        "total_steps": L * trials,
        "mean": [float(v) for v in sim.mean],
        "stderr": [float(v) for v in sim.stderr],
    }
    return res, []


def _cmd_prop21(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["part", "ell", "m", "block"])
    part = cfg["part"]
    if part == "a":
        enum = exact_prop21a(cfg["ell"], cfg["m"], cfg["block"])
    elif part == "b":
        _require(cfg, ["k"])
        enum = exact_prop21b(cfg["ell"], cfg["m"], cfg["block"], cfg["k"])
    elif part == "c":
        enum = exact_prop21c(cfg["m"], cfg["block"])
    else:
        raise UsageError(f"unknown enumeration part '{part}'")
    return {"part": part, "lhs": enum.lhs, "bound": enum.bound, "passed": enum.passed}, []


def _cmd_charsum(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "poly"])
    fs = _field(cfg)
    P = _parse_one_poly(cfg, fs.p)
    chi = character(fs, cfg["ell"])
    lo = cfg.get("lo") if cfg.get("lo") is not None else 0
    hi = cfg.get("hi") if cfg.get("hi") is not None else fs.p - 1
    rep = weil_check(P, chi, lo, hi)
    res = {
        "interval": [lo, hi],
        "magnitude": rep.magnitude,
        "bound": rep.bound,
        "passed": rep.passed,
        "tally": {
            "d": rep.tally.d,
            "counts": list(rep.tally.counts),
            "zero_count": rep.tally.zero_count,
        },
        "complete_twists": [
            {
                "twist": t.twist,
                "order": t.order,
                "magnitude": t.magnitude,
                "bound": t.bound,
                "passed": t.passed,
            }
            for t in rep.complete_twists
        ],
        "skipped_twists": list(rep.skipped_twists),
    }
    return res, []


def _census_json(res) -> dict:
    return {
        "count": res.count,
        "prediction": _frac_json(res.prediction),
        "residual": res.residual,
        "main_bound": res.main_bound,
        "slack": res.slack,
        "main_bound_ok": res.main_bound_ok,
        "bound_ok": res.bound_ok,
        "regime_ok": res.regime_ok,
        "regime_detail": res.regime_detail,
    }


def _cmd_census(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "poly", "offsets", "count_range", "v"])
    fs = _field(cfg)
    polys = _parse_polys(cfg, fs.p)
    chi = character(fs, cfg["ell"])
    offsets = _parse_int_list(cfg["offsets"], "offsets")
    stride = cfg.get("stride") if cfg.get("stride") is not None else 1
    theorem_mode = bool(cfg.get("theorem_mode"))
    raw_v = cfg["v"]
    if isinstance(raw_v, str) or (raw_v and isinstance(raw_v[0], int)):
        raw_v = [raw_v]
    rows = [_parse_int_list(row, "v") for row in raw_v]
    if len(polys) == 1 and len(rows) == 1:
        res = census_m(
            polys[0], chi, stride, offsets, cfg["count_range"], rows[0],
            theorem_mode=theorem_mode,
        )
    else:
        res = joint_census(
            polys, chi, stride, offsets, cfg["count_range"], rows,
            theorem_mode=theorem_mode,
        )
    return _census_json(res), []


def _cmd_shifted(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "poly", "offsets"])
    fs = _field(cfg)
    P = _parse_one_poly(cfg, fs.p)
    C = curve(fs, cfg["ell"], P)
    rect = _rect(cfg, fs.p)
    offsets = _parse_int_list(cfg["offsets"], "offsets")
    stride = cfg.get("stride") if cfg.get("stride") is not None else 1
    res = shifted_census(C, rect, offsets, stride)
    return {
        "count": res.count,
        "prediction": _frac_json(res.prediction),
        "positions": res.positions,
        "boundary_miss": res.boundary_miss,
    }, []


def _cmd_gauss(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p"])
    p = cfg["p"]
    FieldSpec.from_prime(p)
    a_values = [cfg["a"]] if cfg.get("a") is not None else list(range(1, p))
    entries = []
    for a in a_values:
        r, ok = gauss_lemma_check(a, p)
        entries.append({"a": a, "r": r, "ok": ok})
    return {"entries": entries, "all_ok": all(e["ok"] for e in entries)}, []


def _cmd_gaps(cfg: dict) -> tuple[dict, list]:
    _require(cfg, ["p", "ell", "mu", "window"])
    fs = _field(cfg)
    lengths = _parse_int_list(cfg["window"], "window")
    counts = [
        {"L": L, "count": cor4_exceptional(fs, cfg["ell"], L, cfg["mu"])}
        for L in lengths
    ]
    values = [c["count"] for c in counts]
    return {"counts": counts, "monotone": values == sorted(values, reverse=True)}, []


def _cmd_verify(cfg: dict) -> tuple[dict, list]:
    from . import acceptance

    only = None
    if cfg.get("only") is not None:
        only = set(_parse_int_list(cfg["only"], "only"))
    results = acceptance.run_all(threads=cfg["threads"], only=only)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"criterion {r.cid:2d} [{status}] {r.name}: {r.detail}", file=sys.stderr)
    return {
        "criteria": [
            {"id": r.cid, "name": r.name, "passed": r.passed, "detail": r.detail}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }, []


_COMMANDS = {
    "phi": _cmd_phi,
    "joint": _cmd_joint,
    "restricted": _cmd_restricted,
    "beta": _cmd_beta,
    "walk": _cmd_walk,
    "prop21": _cmd_prop21,
    "charsum": _cmd_charsum,
    "census": _cmd_census,
    "shifted": _cmd_shifted,
    "gauss": _cmd_gauss,
    "gaps": _cmd_gaps,
    "verify": _cmd_verify,
}


# ---------------------------------------------------------------- argument parsing


def _add_common(sp, *, fmt=True):
    sp.add_argument("--config", help="JSON config file; explicit flags override it")
    sp.add_argument("--threads", type=int, default=None, help="worker threads (default 1)")
    if fmt:
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        sp.add_argument("--out", help="output path (default stdout)")


def _add_scan(sp, *, block=True):
    sp.add_argument("--p", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--window", "-I", dest="window", type=int, help="window length I")
    if block:
        sp.add_argument("--block", "-L", dest="block", type=int, help="block length L")
    sp.add_argument("--x-start", dest="x_start", type=int)
    sp.add_argument("--scan-len", dest="scan_len", type=int)


def _add_model(sp):
    sp.add_argument("--blocks", type=int, help="model blocks (default scan_len//L - 1)")
    sp.add_argument("--trials", type=int, help="model trials (default 500)")
    sp.add_argument("--seed", type=int, help="required for randomized commands")


def _add_rect(sp):
    sp.add_argument("--x-lo", dest="x_lo", type=int)
    sp.add_argument("--x-hi", dest="x_hi", type=int)
    sp.add_argument("--y-lo", dest="y_lo", type=int)
    sp.add_argument("--y-hi", dest="y_hi", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvestats",
        description="Window statistics of points on curves y^ell = P(x) over F_p.",
    )
    parser.add_argument("--version", action="version", version=f"curvestats {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("phi", help="window-count residue histogram of one curve")
    _add_scan(sp)
    sp.add_argument("--poly", action="append", help="coefficients, constant first: 1,0,1 is x^2+1")
    _add_model(sp)
    _add_common(sp)

    sp = sub.add_parser("joint", help="joint residue histogram over several curves")
    _add_scan(sp)
    sp.add_argument("--poly", action="append", help="repeat once per curve")
    _add_model(sp)
    _add_common(sp)

    sp = sub.add_parser("restricted", help="rectangle-restricted window histogram")
    _add_scan(sp)
    sp.add_argument("--poly", action="append")
    _add_rect(sp)
    _add_model(sp)
    _add_common(sp)

    sp = sub.add_parser("beta", help="beta-quadratic-residue window scan")
    _add_scan(sp, block=False)
    sp.add_argument("--beta", help="rational in (0, 1/2], e.g. 1/2 or 0.3")
    _add_common(sp)

    sp = sub.add_parser("walk", help="simulate the reference random walk")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--block", "-L", dest="block", type=int, help="walk length L")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    _add_common(sp)

    sp = sub.add_parser("prop21", help="exact enumeration bounds for short walks")
    sp.add_argument("--part", choices=["a", "b", "c"])
    sp.add_argument("--ell", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--block", "-L", dest="block", type=int)
    sp.add_argument("--k", type=int, help="number of walks for part b")
    _add_common(sp)

    sp = sub.add_parser("charsum", help="character-sum cancellation check")
    sp.add_argument("--p", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--poly", action="append")
    sp.add_argument("--lo", type=int)
    sp.add_argument("--hi", type=int)
    _add_common(sp)

    sp = sub.add_parser("census", help="stride census against N/d^r")
    sp.add_argument("--p", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--poly", action="append", help="repeat for a joint census")
    sp.add_argument("--stride", type=int)
    sp.add_argument("--offsets", help="comma-separated probe offsets")
    sp.add_argument("--count-range", dest="count_range", type=int, help="census range bound N")
    sp.add_argument("--v", action="append", help="target indices, one row per polynomial")
    sp.add_argument("--theorem-mode", dest="theorem_mode", action="store_true", default=None)
    _add_common(sp)

    sp = sub.add_parser("shifted", help="shifted rectangle census")
    sp.add_argument("--p", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--poly", action="append")
    _add_rect(sp)
    sp.add_argument("--offsets", help="comma-separated probe offsets")
    sp.add_argument("--stride", type=int)
    _add_common(sp)

    sp = sub.add_parser("gauss", help="Gauss-lemma parity sweep")
    sp.add_argument("--p", type=int)
    sp.add_argument("--a", type=int, help="single multiplier (default: sweep 1..p-1)")
    _add_common(sp)

    sp = sub.add_parser("gaps", help="windows missing a character class")
    sp.add_argument("--p", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--mu", type=int, help="unity index to look for")
    sp.add_argument("--window", "-L", dest="window", help="window length(s), comma-separated")
    _add_common(sp)

    sp = sub.add_parser("verify", help="run the full verification suite")
    sp.add_argument("--only", help="comma-separated criterion ids")
    _add_common(sp)

    return parser


_NON_CONFIG_KEYS = {"command", "config"}


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG_KEYS}
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as f:
                file_cfg = json.load(f)
        except OSError as e:
            raise UsageError(f"cannot read config file: {e}")
        except json.JSONDecodeError as e:
            raise UsageError(f"config file is not valid JSON: {e}")
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in file_cfg.items():
            if key not in cfg:
                raise UsageError(
                    f"unknown config field '{key}' for command '{args.command}'"
                )
            if cfg[key] is None:
                cfg[key] = value
    if cfg.get("threads") is None:
        cfg["threads"] = 1
    if "trials" in cfg and cfg["trials"] is None:
        cfg["trials"] = 500
    if "format" in cfg and cfg["format"] is None:
        cfg["format"] = "json"
    return cfg


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        cfg = _merge_config(args)
        handler = _COMMANDS[args.command]
        start = time.perf_counter()
        results, checks = handler(cfg)
        duration = time.perf_counter() - start
        report = {
            "command": args.command,
            "version": __version__,
            "config": {
                k: v
                for k, v in cfg.items()
                if k not in ("format", "out", "threads") and v is not None
            },
            "hypotheses": _checks_json(checks),
            "results": results,
        }
        fmt = cfg.get("format") or "json"
        emit(report, fmt, cfg.get("out"), duration)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except HypothesisError as e:
        label = HYPOTHESIS_LABELS.get(e.name, e.name)
        print(f"hypothesis violated: {label} [{e.name}]: {e.detail}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"validation failure: {e}", file=sys.stderr)
        return 1
    if args.command == "verify" and not results["all_passed"]:
        return 1
    if args.command == "prop21" and not results["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
