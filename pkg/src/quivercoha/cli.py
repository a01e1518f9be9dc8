"""Batch front door: parse a quiver, run one mode, emit a deterministic report.

Modes
-----
dt-table            quantum DT invariants Omega(gamma) for 0 < gamma <= gamma-max
check-freeness      linear-algebra generator counts vs series extraction, per (gamma, k)
check-nonvanishing  positive-root criterion vs Omega != 0, quiver given as half quiver
genericity          seeded generic eigenvalue data, lambda, and the pairing check
shuffle-eval        twisted Hall product of two user-supplied elements

Reports are byte-deterministic given the flags and seed: JSON with sorted
keys (the source of truth) or flattened CSV.  Exit status is 0 on success,
1 when a check mode finds a disagreement, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .dtseries import build_generating_series, dt_report, omega_from_table, plethystic_factor
from .errors import (DimensionMismatchError, DivisibilityError, DomainError,
                     LimitExceededError, QuiverFormatError, StructuralViolationError)
from .coha import CohaElement, twisted_product
from .freeness import prim_dims
from .legs import attach_legs, is_generic, lambda_from_eigenvalues, sample_generic
from .poly import parse_colored_poly
from .quiver import (DimVector, Quiver, double, enumerate_dim_vectors, euler_form,
                     quiver_from_spec)
from .roots import nonvanishing_certificate

MODES = ("dt-table", "check-freeness", "check-nonvanishing", "genericity",
         "shuffle-eval")


@dataclass
class RunConfig:
    quiver: Quiver
    mode: str
    gamma_max: DimVector
    qtrunc: int = 12
    seed: int = 0
    fmt: str = "json"
    out: str | None = None
    left: str | None = None
    left_gamma: DimVector | None = None
    right: str | None = None
    right_gamma: DimVector | None = None


def _parse_csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as err:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from err


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quivercoha",
        description="Exact Hall-algebra and DT-invariant computations on quivers.")
    p.add_argument("--quiver", required=True,
                   help="path to a JSON quiver spec {\"vertices\": n, \"arrows\": [[i,j,m],...]}")
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--gamma-max", required=True,
                   help="componentwise bound, comma-separated, e.g. 3 or 2,2")
    p.add_argument("--qtrunc", type=int, default=12,
                   help="series window width in half powers of q (default 12)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--left", default=None, help="shuffle-eval: left polynomial")
    p.add_argument("--left-gamma", default=None)
    p.add_argument("--right", default=None, help="shuffle-eval: right polynomial")
    p.add_argument("--right-gamma", default=None)
    return p


def load_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    try:
        with open(args.quiver, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as err:
        raise QuiverFormatError(f"cannot read quiver spec: {err}", args.quiver) from err
    except json.JSONDecodeError as err:
        raise QuiverFormatError(f"invalid JSON: {err.msg}",
                                f"{args.quiver}:{err.lineno}:{err.colno}") from err
    quiver = quiver_from_spec(raw)
    gamma_max = _parse_csv_ints(args.gamma_max)
    if len(gamma_max) != quiver.vertex_count or any(x < 0 for x in gamma_max):
        raise DomainError(f"gamma-max {gamma_max} does not fit a "
                          f"{quiver.vertex_count}-vertex quiver")
    if args.qtrunc < 0:
        raise DomainError("qtrunc must be >= 0")
    return RunConfig(
        quiver=quiver, mode=args.mode, gamma_max=gamma_max, qtrunc=args.qtrunc,
        seed=args.seed, fmt=args.fmt, out=args.out,
        left=args.left,
        left_gamma=_parse_csv_ints(args.left_gamma) if args.left_gamma else None,
        right=args.right,
        right_gamma=_parse_csv_ints(args.right_gamma) if args.right_gamma else None)


# -- modes --------------------------------------------------------------------


def run_dt_table(cfg: RunConfig) -> tuple[int, dict]:
    if not cfg.quiver.is_symmetric():
        raise DomainError("dt-table needs a symmetric quiver")
    report = dt_report(cfg.quiver, cfg.gamma_max, cfg.qtrunc)
    return 0, report.to_dict()


def run_check_freeness(cfg: RunConfig) -> tuple[int, dict]:
    if not cfg.quiver.is_symmetric():
        raise DomainError("check-freeness needs a symmetric quiver")
    series = build_generating_series(cfg.quiver, cfg.gamma_max, cfg.qtrunc)
    table = plethystic_factor(series, cfg.gamma_max, cfg.qtrunc)
    rows = []
    all_ok = True
    for gamma in enumerate_dim_vectors(cfg.gamma_max):
        chi = euler_form(cfg.quiver, gamma, gamma)
        linear = prim_dims(cfg.quiver, gamma, chi + cfg.qtrunc)
        lin_lo, lin_hi = linear.windows[gamma]
        ser_lo, ser_hi = table.windows[gamma]
        lo, hi = max(lin_lo, ser_lo), min(lin_hi, ser_hi)
        for k in range(lo, hi + 1):
            if (k - chi) % 2:
                continue
            c_lin = linear.dim(gamma, k)
            c_ser = table.dim(gamma, k)
            ok = c_lin == c_ser
            all_ok = all_ok and ok
            rows.append({"gamma": list(gamma), "k": k, "c_linear": c_lin,
                         "c_series": c_ser, "ok": ok})
    payload = {
        "quiver": cfg.quiver.to_spec_dict(),
        "gamma_max": list(cfg.gamma_max),
        "qtrunc": cfg.qtrunc,
        "cells": rows,
        "verdict": all_ok,
    }
    return (0 if all_ok else 1), payload


def run_check_nonvanishing(cfg: RunConfig) -> tuple[int, dict]:
    q0 = cfg.quiver
    doubled = double(q0)
    report = dt_report(doubled, cfg.gamma_max, cfg.qtrunc)
    rows = []
    all_ok = True
    for gamma in enumerate_dim_vectors(cfg.gamma_max):
        root, cert = nonvanishing_certificate(q0, gamma)
        row = report.row(gamma)
        ok = root == row.nonvanishing
        all_ok = all_ok and ok
        rows.append({
            "gamma": list(gamma),
            "root": root,
            "certificate": cert.to_dict(),
            "omega_nonzero": row.nonvanishing,
            "omega_window": [row.series.lo, row.series.hi],
            "ok": ok,
        })
    payload = {
        "half_quiver": q0.to_spec_dict(),
        "doubled_quiver": doubled.to_spec_dict(),
        "gamma_max": list(cfg.gamma_max),
        "qtrunc": cfg.qtrunc,
        "rows": rows,
        "verdict": all_ok,
    }
    return (0 if all_ok else 1), payload


def run_genericity(cfg: RunConfig) -> tuple[int, dict]:
    q = cfg.quiver
    rows = []
    for idx, gamma in enumerate(enumerate_dim_vectors(cfg.gamma_max)):
        t = sample_generic(q, gamma, (cfg.seed, idx))
        legs = attach_legs(double(q), q, gamma)
        lam = lambda_from_eigenvalues(t, legs)
        ok, cert = is_generic(t, q, gamma)
        pairing = sum(g * l for g, l in zip(legs.tilde_gamma, lam))
        rows.append({
            "gamma": list(gamma),
            "t": t.to_dict()["t"],
            "tilde_gamma": list(legs.tilde_gamma),
            "lambda": [str(x) for x in lam],
            "gamma_dot_lambda": str(pairing),
            "generic": ok,
            "certificate": cert.to_dict(),
        })
    payload = {
        "quiver": cfg.quiver.to_spec_dict(),
        "gamma_max": list(cfg.gamma_max),
        "seed": cfg.seed,
        "rows": rows,
    }
    return 0, payload


def run_shuffle_eval(cfg: RunConfig) -> tuple[int, dict]:
    if not cfg.quiver.is_symmetric():
        raise DomainError("shuffle-eval needs a symmetric quiver")
    if None in (cfg.left, cfg.left_gamma, cfg.right, cfg.right_gamma):
        raise DomainError(
            "shuffle-eval needs --left, --left-gamma, --right, --right-gamma")
    left = CohaElement.checked(cfg.quiver, cfg.left_gamma,
                               parse_colored_poly(cfg.left_gamma, cfg.left))
    right = CohaElement.checked(cfg.quiver, cfg.right_gamma,
                                parse_colored_poly(cfg.right_gamma, cfg.right))
    prod = twisted_product(left, right)
    payload = {
        "quiver": cfg.quiver.to_spec_dict(),
        "left": {"gamma": list(left.gamma), "poly": left.poly.canonical_str()},
        "right": {"gamma": list(right.gamma), "poly": right.poly.canonical_str()},
        "product": {"gamma": list(prod.gamma), "poly": prod.poly.canonical_str()},
    }
    return 0, payload


_RUNNERS = {
    "dt-table": run_dt_table,
    "check-freeness": run_check_freeness,
    "check-nonvanishing": run_check_nonvanishing,
    "genericity": run_genericity,
    "shuffle-eval": run_shuffle_eval,
}


# -- serialization ------------------------------------------------------------


def render_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flat(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


def render_csv(payload: dict) -> str:
    """Header rows for the scalar fields, then one table of row records."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows_key = next((k for k in ("omega", "cells", "rows") if k in payload), None)
    for key in sorted(payload):
        if key == rows_key:
            continue
        writer.writerow(["#", key, _flat(payload[key])])
    if rows_key:
        records = payload[rows_key]
        if records:
            fields = sorted({f for rec in records for f in rec})
            writer.writerow(fields)
            for rec in records:
                writer.writerow([_flat(rec.get(f)) for f in fields])
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, str]:
    code, payload = _RUNNERS[cfg.mode](cfg)
    text = render_json(payload) if cfg.fmt == "json" else render_csv(payload)
    return code, text


def main(argv=None) -> int:
    try:
        cfg = load_config(argv if argv is not None else sys.argv[1:])
        code, text = run(cfg)
    except (QuiverFormatError, DomainError, DimensionMismatchError,
            LimitExceededError, StructuralViolationError,
            DivisibilityError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
