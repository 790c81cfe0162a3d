"""Command-line driver: reference tables, degree-law grid, verification suites.

Four modes, selected by a mutually exclusive flag:

* ``--table 1|2|3``  recompute every cell of the corresponding reference
  table (extreme zeros and inner bounds) and compare against the printed
  values at their printed precision;
* ``--grid``         run the connection decomposition over a grid of
  (n, m, k) cells and check the degree law plus interlacing behaviour;
* ``--verify``       run the identity residual suites of all modules;
* ``--decompose``    run a single connection decomposition and dump it.

Reports are emitted as JSON (default) or CSV.  Exit status: 0 when nothing
failed (flagged cells are allowed), 1 on any failure, 2 on configuration
errors.

A handful of printed table cells disagree with their recomputed values at
far beyond the printed rounding; these are embedded as flagged cells with
the recomputed reference attached and are reported as "flagged", not
"fail".  See the README for the list.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from mpmath import mp

from . import __version__
from .core import TolerancePolicy, to_scalar
from .families import even_modifier, generate_all, mp_family, mp_symmetry_residual, pj_family, recurrence_residual
from .associated import associated_identity_residual, extension_identity_residual
from .transform import christoffel_transform, connection_decompose, connection_degree_law
from .zeros import (
    bound_separation,
    gauss_rule,
    interlace_strict,
    mp_bound,
    pj_bound,
    polynomial_real_roots,
    stieltjes_check,
    zeros_golub_welsch,
)

ENV_PRECISION = "CHRISTOFFEL_PRECISION_BITS"

# Tolerance for matching a flagged cell against its recomputed reference.
_FLAG_TOL = "5e-4"

# Reference tables.  Cells are kept exactly as printed; "accepted" entries
# carry the recomputed value for cells whose printed figure disagrees with
# recomputation far beyond its rounding (suspected misprints).
_TABLES = {
    1: {
        "family": "mp",
        "n": 30,
        "columns": ("x_min", "B0", "B2", "x_max"),
        "rows": [
            {"params": {"lambda": "0.5", "phi": "0.08"},
             "cells": {"x_min": "-650.578", "B0": "-367.963", "B2": "-0.307", "x_max": "0.010"},
             "accepted": {}},
            {"params": {"lambda": "0.5", "phi": "0.9"},
             "cells": {"x_min": "-53.239", "B0": "-23.410", "B2": "-0.019", "x_max": "11.016"},
             "accepted": {}},
            {"params": {"lambda": "0.5", "phi": "1.57"},
             "cells": {"x_min": "-24.912", "B0": "-0.023", "B2": "-0.0002", "x_max": "24.870"},
             "accepted": {"B2": "-1.9582e-5"}},
            {"params": {"lambda": "20", "phi": "0.1"},
             "cells": {"x_min": "-853.298", "B0": "-488.366", "B2": "-83.720", "x_max": "-52.403"},
             "accepted": {}},
            {"params": {"lambda": "20", "phi": "1.57"},
             "cells": {"x_min": "-39.186", "B0": "-0.039", "B2": "-0.007", "x_max": "39.113"},
             "accepted": {}},
        ],
    },
    2: {
        "family": "pj",
        "n": 5,
        "columns": ("x_min", "B2", "B1", "B0", "x_max"),
        "rows": [
            {"params": {"a": "-10", "b": "8"},
             "cells": {"x_min": "0.3455", "B2": "0.8889", "B1": "1.6", "B0": "2.6667", "x_max": "3.5733"},
             "accepted": {}},
            {"params": {"a": "-5.5", "b": "8"},
             "cells": {"x_min": "1.1189", "B2": "1.7778", "B1": "16", "B0": "58.6667", "x_max": "60.7767"},
             "accepted": {}},
            {"params": {"a": "-5.0001", "b": "3"},
             "cells": {"x_min": "0.2456", "B2": "0.7500", "B1": "30000", "B0": "149988", "x_max": "149988"},
             "accepted": {}},
            {"params": {"a": "-5.5", "b": "0"},
             "cells": {"x_min": "-2.1428", "B2": "0", "B1": "0", "B0": "0", "x_max": "2.1428"},
             "accepted": {}},
        ],
    },
    3: {
        "family": "pj",
        "n": 25,
        "columns": ("x_min", "B2", "B0", "x_max"),
        "rows": [
            {"params": {"a": "-35", "b": "8"},
             "cells": {"x_min": "-1.6655", "B2": "0.2353", "B0": "2.5455", "x_max": "4.8432"},
             # recomputed smallest zero is -1.0655 (confirmed independently
             # by double-precision tridiagonal eigenvalues, polynomial root
             # finding at 256 bits and weight-function quadrature)
             "accepted": {"x_min": "-1.0655"}},
            {"params": {"a": "-35", "b": "1"},
             "cells": {"x_min": "-1.1237", "B2": "0.0294", "B0": "0.3185", "x_max": "2.5933"},
             # recomputed smallest zero is -2.1237; B0 = 35/110 = 0.31818
             "accepted": {"x_min": "-2.1237", "B0": "0.31818"}},
            {"params": {"a": "-35", "b": "0"},
             "cells": {"x_min": "-2.3478", "B2": "0", "B0": "0", "x_max": "2.3478"},
             "accepted": {}},
            {"params": {"a": "-55", "b": "5"},
             "cells": {"x_min": "-0.9916", "B2": "0.09926", "B0": "0.2957", "x_max": "1.4992"},
             # recomputed B2 = 5/54 = 0.0926
             "accepted": {"B2": "0.0926"}},
        ],
    },
}


@dataclass
class RunConfig:
    command: str  # "table" | "grid" | "verify" | "decompose"
    table_id: Optional[int] = None
    family: Optional[str] = None  # "mp" | "pj"
    lam: Optional[str] = None
    phi: Optional[str] = None
    a: Optional[str] = None
    b: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    precision_bits: int = 256
    rel_tol: Optional[str] = None
    abs_tol: Optional[str] = None
    fmt: str = "json"
    out: Optional[str] = None

    def policy(self) -> TolerancePolicy:
        with mp.workprec(max(self.precision_bits, 64)):
            return TolerancePolicy(
                precision_bits=self.precision_bits,
                rel_tol=to_scalar(self.rel_tol) if self.rel_tol else None,
                abs_tol=to_scalar(self.abs_tol) if self.abs_tol else None,
            )

    def make_family(self, policy: TolerancePolicy):
        if self.family == "mp":
            if self.lam is None or self.phi is None:
                raise ValueError("Meixner-Pollaczek needs --lambda and --phi")
            return mp_family(self.lam, self.phi, policy)
        if self.family == "pj":
            if self.a is None or self.b is None:
                raise ValueError("Pseudo-Jacobi needs --a and --b")
            return pj_family(self.a, self.b, policy)
        raise ValueError("--family must be mp or pj")


@dataclass
class Report:
    meta: dict
    rows: list
    summary: dict

    @property
    def exit_code(self) -> int:
        return 0 if self.summary.get("fail", 0) == 0 else 1

    def to_json(self) -> str:
        return json.dumps(
            {"meta": self.meta, "rows": self.rows, "summary": self.summary},
            indent=2,
            ensure_ascii=False,
        ) + "\n"

    def to_csv(self) -> str:
        flat_rows = [_flatten(r) for r in self.rows]
        fields: list = []
        for fr in flat_rows:
            for key in fr:
                if key not in fields:
                    fields.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\r\n")
        writer.writeheader()
        for fr in flat_rows:
            writer.writerow(fr)
        return buf.getvalue()


def _flatten(obj, prefix: str = "") -> dict:
    out = {}
    for key, val in obj.items():
        name = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(val, dict):
            out.update(_flatten(val, name))
        elif isinstance(val, (list, tuple)):
            out[name] = ";".join(str(v) for v in val)
        else:
            out[name] = "" if val is None else str(val)
    return out


def _fmt(x, sig: int = 12) -> str:
    return mp.nstr(x, sig)


def _meta(config: RunConfig, policy: TolerancePolicy, elapsed: float, extra: Optional[dict] = None) -> dict:
    meta = {
        "version": __version__,
        "command": config.command,
        "precision_bits": policy.precision_bits,
        "rel_tol": _fmt(policy.rel_tol, 6),
        "abs_tol": _fmt(policy.abs_tol, 6),
    }
    if extra:
        meta.update(extra)
    # everything under "timestamp" is exempt from the byte-identical
    # reproducibility contract
    meta["timestamp"] = {
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "elapsed_seconds": round(elapsed, 3),
    }
    return meta


def _summarise(rows) -> dict:
    counts = {"rows": len(rows), "pass": 0, "flagged": 0, "fail": 0}
    for r in rows:
        counts[r["verdict"]] += 1
    return counts


def _cell_tolerance(printed: str) -> mp.mpf:
    """Half a unit of the printed precision, times ten: 5e-4 for 4 decimals."""
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return mp.mpf(5) * mp.mpf(10) ** (-decimals)


def run_table(table_id: int, config: RunConfig) -> Report:
    if table_id not in _TABLES:
        raise ValueError(f"unknown table {table_id}")
    spec = _TABLES[table_id]
    policy = config.policy()
    n = spec["n"]
    started = time.monotonic()
    rows = []
    for fixture in spec["rows"]:
        params = fixture["params"]
        with policy.workprec():
            if spec["family"] == "mp":
                fam = mp_family(params["lambda"], params["phi"], policy)
                bound = lambda k: mp_bound(params["lambda"], params["phi"], n, k, policy)
            else:
                fam = pj_family(params["a"], params["b"], policy)
                bound = lambda k: pj_bound(params["a"], params["b"], n, k, policy)
            zs = zeros_golub_welsch(fam, n, policy)
            computed = {}
            for col in spec["columns"]:
                if col == "x_min":
                    computed[col] = zs[0]
                elif col == "x_max":
                    computed[col] = zs[-1]
                else:
                    computed[col] = bound(int(col[1]))
            cell_verdicts = {}
            deviation = {}
            tolerance = {}
            flag_tol = to_scalar(_FLAG_TOL)
            for col in spec["columns"]:
                printed = fixture["cells"][col]
                tol = _cell_tolerance(printed)
                dev = abs(computed[col] - to_scalar(printed))
                deviation[col] = _fmt(dev, 3)
                tolerance[col] = _fmt(tol, 3)
                accepted = fixture["accepted"].get(col)
                if accepted is None:
                    cell_verdicts[col] = "pass" if dev <= tol else "fail"
                else:
                    ref_dev = abs(computed[col] - to_scalar(accepted))
                    cell_verdicts[col] = "flagged" if ref_dev <= flag_tol else "fail"
        if any(v == "fail" for v in cell_verdicts.values()):
            verdict = "fail"
        elif any(v == "flagged" for v in cell_verdicts.values()):
            verdict = "flagged"
        else:
            verdict = "pass"
        rows.append(
            {
                "inputs": {**params, "n": n},
                "computed": {c: _fmt(v) for c, v in computed.items()},
                "expected": dict(fixture["cells"]),
                "accepted": dict(fixture["accepted"]),
                "deviation": deviation,
                "tolerance": tolerance,
                "cells": cell_verdicts,
                "verdict": verdict,
            }
        )
    elapsed = time.monotonic() - started
    return Report(
        meta=_meta(config, policy, elapsed, {"table": table_id}),
        rows=rows,
        summary=_summarise(rows),
    )


def run_grid(config: RunConfig) -> Report:
    """Degree-law and interlacing grid for the Meixner-Pollaczek family.

    Cells: n in 4..n_max (default 12), m in 2..n, k in 0..m+2.  For every
    cell the measured degrees of (a, G) must match the law and the identity
    residual must sit below tolerance.  When deg G = m-1 the zeros of
    G * g_{n-m,k} are checked for strict interlacing with the zeros of p_n;
    that is asserted for m = 2, k <= 2.  For m = 2, k = 3 the product has
    n+1 zeros, which cannot interlace n zeros one-per-gap; the grid asserts
    that failure (and records how many product zeros escape the span of the
    extreme zeros of p_n).
    """
    policy = config.policy()
    lam = config.lam or "0.5"
    phi = config.phi or "0.9"
    n_max = config.n or 12
    if n_max < 4:
        raise ValueError("grid needs --n of at least 4")
    started = time.monotonic()
    fam = mp_family(lam, phi, policy)
    k_top = min(n_max, 12) + 2
    modifiers = {k: even_modifier(fam, k, policy) for k in range(0, k_top + 1)}
    shifted = {k: fam.shifted(k) for k in range(0, k_top + 1)}
    zeros_p = {}
    zeros_g = {}
    rows = []
    for n in range(4, n_max + 1):
        for m in range(2, n + 1):
            for k in range(0, m + 3):
                decomp = connection_decompose(fam, modifiers[k], n, m, policy)
                law = connection_degree_law(k, m)
                deg_a = decomp.a_poly.degree
                deg_g = decomp.G_poly.degree
                degrees_ok = deg_a == law.deg_a and deg_g == law.deg_G
                residual_ok = decomp.residual <= policy.rel_tol
                interlace = "n/a"
                interlace_ok = True
                if deg_g == m - 1 or (m == 2 and k == 3):
                    if n not in zeros_p:
                        zeros_p[n] = zeros_golub_welsch(fam, n, policy)
                    if (k, n - m) not in zeros_g:
                        zeros_g[(k, n - m)] = zeros_golub_welsch(shifted[k], n - m, policy)
                    zp = zeros_p[n]
                    zg = zeros_g[(k, n - m)]
                    if decomp.G_poly.degree == 1:
                        g_roots, nonreal = [decomp.B], 0
                    else:
                        g_roots, nonreal = polynomial_real_roots(decomp.G_poly, policy)
                    product = sorted(list(zg.values) + list(g_roots))
                    if nonreal:
                        interlace = f"fails({nonreal} nonreal G roots)"
                    elif len(product) == len(zp) - 1:
                        verdict = interlace_strict(product, zp, policy)
                        interlace = "holds" if verdict.strict else "fails"
                        if verdict.common:
                            interlace = "fails(common zeros)"
                    else:
                        with policy.workprec():
                            outside = sum(1 for v in product if v < zp[0] or v > zp[-1])
                        interlace = f"fails(size {len(product)} vs {len(zp) - 1}, {outside} outside span)"
                    if m == 2 and k <= 2:
                        interlace_ok = interlace == "holds"
                    elif m == 2 and k == 3:
                        interlace_ok = interlace.startswith("fails")
                ok = degrees_ok and residual_ok and interlace_ok
                rows.append(
                    {
                        "inputs": {"n": n, "m": m, "k": k},
                        "computed": {
                            "deg_a": deg_a,
                            "deg_G": deg_g,
                            "law_deg_a": law.deg_a,
                            "law_deg_G": law.deg_G,
                            "linear_G": law.linear_G,
                            "residual": _fmt(decomp.residual, 3),
                            "interlace": interlace,
                            "B": _fmt(decomp.B) if decomp.B is not None else None,
                        },
                        "verdict": "pass" if ok else "fail",
                    }
                )
    elapsed = time.monotonic() - started
    return Report(
        meta=_meta(config, policy, elapsed, {"lambda": lam, "phi": phi, "n_max": n_max}),
        rows=rows,
        summary=_summarise(rows),
    )


def _verify_rows(policy: TolerancePolicy) -> list:
    rng = random.Random(20250810)
    rows = []

    def record(suite, case, value, threshold, ok):
        rows.append(
            {
                "suite": suite,
                "case": case,
                "value": value,
                "threshold": threshold,
                "verdict": "pass" if ok else "fail",
            }
        )

    def res_row(suite, case, residual):
        record(suite, case, _fmt(residual, 3), _fmt(policy.rel_tol, 3), residual <= policy.rel_tol)

    mp_cases = [("0.5", "0.9"), ("20", "0.1"), ("3.25", "2.4")]
    pj_cases = [("-35", "8"), ("-26", "-4"), ("-23.5", "0")]
    families = [mp_family(l, p, policy) for l, p in mp_cases]
    families += [pj_family(a, b, policy) for a, b in pj_cases]

    for fam in families:
        worst = mp.mpf(0)
        for n in (2, 9, 17):
            for _ in range(3):
                x = to_scalar(rng.uniform(-4, 4))
                worst = max(worst, recurrence_residual(fam, n, x, policy))
        res_row("recurrence", fam.label, worst)

    for fam in families:
        worst = mp.mpf(0)
        for n, m in ((6, 3), (12, 7), (20, 20)):
            for _ in range(3):
                x = to_scalar(rng.uniform(-3, 3))
                worst = max(worst, associated_identity_residual(fam, n, m, x, policy))
        res_row("associated-bridge", fam.label, worst)
        worst = mp.mpf(0)
        for n, m in ((5, 0), (5, 1), (8, 5), (10, 10)):
            for _ in range(3):
                x = to_scalar(rng.uniform(-3, 3))
                worst = max(worst, extension_identity_residual(fam, n, m, x, policy))
        res_row("extension", fam.label, worst)

    for lam, phi in mp_cases:
        worst = mp.mpf(0)
        for n in (5, 12):
            for _ in range(3):
                x = to_scalar(rng.uniform(-5, 5))
                worst = max(worst, mp_symmetry_residual(lam, phi, n, x, policy))
        res_row("mp-symmetry", f"MP(lambda={lam}, phi={phi})", worst)

    with policy.workprec():
        fam = mp_family("0.5", "0.9", policy)
        for k in (1, 2, 3):
            mod = even_modifier(fam, k, policy)
            worst = mp.mpf(0)
            for deg in range(0, 7):
                det = christoffel_transform(fam, mod, deg, policy)
                ref = generate_all(fam.shifted(k), deg, policy)[deg]
                worst = max(worst, (det - ref).inf_norm() / max(1, ref.inf_norm()))
            res_row("transform-oracle", f"MP k={k}", worst)
        pj = pj_family("-12", "8", policy)
        mod = even_modifier(pj, 1, policy)
        worst = mp.mpf(0)
        for deg in range(0, 7):
            det = christoffel_transform(pj, mod, deg, policy)
            ref = generate_all(pj.shifted(1), deg, policy)[deg]
            worst = max(worst, (det - ref).inf_norm() / max(1, ref.inf_norm()))
        res_row("transform-oracle", "PJ k=1", worst)

    for fam, cells in (
        (mp_family("0.5", "0.9", policy), [(8, 2, 0), (8, 2, 1), (8, 2, 2), (8, 2, 3), (9, 3, 2), (4, 2, 4)]),
        (pj_family("-20", "8", policy), [(7, 2, 0), (7, 2, 1), (9, 4, 1)]),
    ):
        worst = mp.mpf(0)
        deg_ok = True
        for n, m, k in cells:
            decomp = connection_decompose(fam, even_modifier(fam, k, policy), n, m, policy)
            law = connection_degree_law(k, m)
            worst = max(worst, decomp.residual)
            deg_ok = deg_ok and decomp.a_poly.degree == law.deg_a and decomp.G_poly.degree == law.deg_G
        res_row("decomposition-residual", fam.label, worst)
        record("decomposition-degrees", fam.label, "match" if deg_ok else "mismatch", "match", deg_ok)

    with policy.workprec():
        stieltjes_cases = [
            (mp_family("0.5", "0.9", policy), 0, 10, "coprime"),
            (mp_family("0.5", "0.9", policy), 1, 10, "coprime"),
            (mp_family("0.5", "0.9", policy), 2, 10, "coprime"),
            (pj_family("-35", "8", policy), 0, 12, "coprime"),
            (pj_family("-35", "8", policy), 1, 12, "coprime"),
            (pj_family("-35", "8", policy), 2, 12, "coprime"),
            (pj_family("-5.5", "0", policy), 1, 5, "common_zero"),
            (mp_family("0.5", mp.pi / 2, policy), 2, 9, "common_zero"),
            (mp_family("20", "0.1", policy), 0, 8, "coprime"),
        ]
    for fam, k, n, branch in stieltjes_cases:
        verdict = stieltjes_check(fam, k, n, policy)
        ok = verdict.ok and verdict.branch == branch
        record(
            "stieltjes",
            f"{fam.label} k={k} n={n}",
            f"{verdict.branch}:{'ok' if verdict.ok else ';'.join(verdict.violations)}",
            f"{branch}:ok",
            ok,
        )

    # normalised by the discrete norms so the gate scales with precision
    for fam, n in ((mp_family("0.5", "0.9", policy), 10), (pj_family("-35", "8", policy), 10)):
        nodes, weights = gauss_rule(fam, n, policy)
        with policy.workprec():
            ladder = generate_all(fam, n - 1, policy)
            vals = [[p(x) for x in nodes.values] for p in ladder]
            norms = [sum(w * v * v for v, w in zip(vals[j], weights)) for j in range(n)]
            worst = mp.mpf(0)
            for j in range(n):
                for l in range(j):
                    if j + l <= 2 * n - 1:
                        s = sum(w * a * b for a, b, w in zip(vals[j], vals[l], weights))
                        worst = max(worst, abs(s) / mp.sqrt(norms[j] * norms[l]))
        record("gauss-orthogonality", f"{fam.label} n={n}", _fmt(worst, 3), _fmt(policy.rel_tol, 3), worst <= policy.rel_tol)

    # discrete orthogonality of the transform output under the modified weight
    with policy.workprec():
        fam = mp_family("0.5", "0.9", policy)
        mod = even_modifier(fam, 2, policy)
        nodes, weights = gauss_rule(fam, 12, policy)
        gs = [christoffel_transform(fam, mod, d, policy) for d in range(5)]
        worst = mp.mpf(0)
        for j in range(5):
            for l in range(j):
                s = sum(w * mod.c(x) * gs[j](x) * gs[l](x) for x, w in zip(nodes.values, weights))
                norm = sum(w * mod.c(x) * gs[j](x) ** 2 for x, w in zip(nodes.values, weights))
                worst = max(worst, abs(s) / norm)
    record("transform-discrete-orthogonality", "MP(0.5,0.9) k=2", _fmt(worst, 3), _fmt(policy.rel_tol, 3), worst <= policy.rel_tol)

    bound_cases = [mp_family(l, p, policy) for l, p in mp_cases]
    bound_cases += [pj_family(a, b, policy) for a, b in pj_cases]
    for _ in range(4):
        bound_cases.append(mp_family(to_scalar(rng.uniform(0.1, 25)), to_scalar(rng.uniform(0.05, 3.1)), policy))
        bound_cases.append(pj_family(to_scalar(rng.uniform(-60, -22)), to_scalar(rng.uniform(-10, 10)), policy))
    for fam in bound_cases:
        n = 12 if fam.max_valid_degree is None else min(12, fam.max_valid_degree)
        report = bound_separation(fam, n, policy)
        ok = all(report.separated.values()) and report.ordering_ok
        record(
            "bound-separation",
            f"{fam.label} n={n}",
            f"separated={sorted(report.separated.items())} ordering={report.ordering_ok}",
            "all separated, ordering holds",
            ok,
        )

    return rows


def run_verify(config: RunConfig) -> Report:
    policy = config.policy()
    started = time.monotonic()
    rows = _verify_rows(policy)
    elapsed = time.monotonic() - started
    return Report(meta=_meta(config, policy, elapsed), rows=rows, summary=_summarise(rows))


def run_decompose(config: RunConfig) -> Report:
    policy = config.policy()
    if config.n is None or config.m is None or config.k is None:
        raise ValueError("--decompose needs --n, --m and --k")
    fam = config.make_family(policy)
    started = time.monotonic()
    modifier = even_modifier(fam, config.k, policy)
    decomp = connection_decompose(fam, modifier, config.n, config.m, policy)
    law = connection_degree_law(config.k, config.m)
    degrees_ok = decomp.a_poly.degree == law.deg_a and decomp.G_poly.degree == law.deg_G
    residual_ok = decomp.residual <= policy.rel_tol
    row = {
        "inputs": {
            "family": fam.label,
            "n": config.n,
            "m": config.m,
            "k": config.k,
        },
        "computed": {
            "deg_a": decomp.a_poly.degree,
            "deg_G": decomp.G_poly.degree,
            "law_deg_a": law.deg_a,
            "law_deg_G": law.deg_G,
            "linear_G": law.linear_G,
            "a_coeffs": [_fmt(c) for c in decomp.a_poly.coeffs],
            "G_coeffs": [_fmt(c) for c in decomp.G_poly.coeffs],
            "g_coeffs": [_fmt(c) for c in decomp.g_poly.coeffs],
            "scale": _fmt(decomp.scale),
            "B": _fmt(decomp.B) if decomp.B is not None else None,
            "residual": _fmt(decomp.residual, 3),
            "d": [_fmt(v) for v in decomp.work],
        },
        "verdict": "pass" if (degrees_ok and residual_ok) else "fail",
    }
    elapsed = time.monotonic() - started
    return Report(meta=_meta(config, policy, elapsed), rows=[row], summary=_summarise([row]))


def dispatch(config: RunConfig) -> Report:
    if config.command == "table":
        return run_table(config.table_id, config)
    if config.command == "grid":
        return run_grid(config)
    if config.command == "verify":
        return run_verify(config)
    if config.command == "decompose":
        return run_decompose(config)
    raise ValueError(f"unknown command {config.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="christoffel",
        description="Orthogonal polynomial connection formulas, zero bounds and reference-table reproduction.",
    )
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--table", type=int, choices=(1, 2, 3), help="reproduce a reference table")
    mode.add_argument("--grid", action="store_true", help="run the degree-law grid")
    mode.add_argument("--verify", action="store_true", help="run the identity verification suites")
    mode.add_argument("--decompose", action="store_true", help="run one connection decomposition")
    parser.add_argument("--family", choices=("mp", "pj"), help="family for --decompose")
    parser.add_argument("--lambda", dest="lam", help="Meixner-Pollaczek lambda")
    parser.add_argument("--phi", help="Meixner-Pollaczek phi")
    parser.add_argument("--a", help="Pseudo-Jacobi a")
    parser.add_argument("--b", help="Pseudo-Jacobi b")
    parser.add_argument("--n", type=int, help="polynomial degree (or grid n cap)")
    parser.add_argument("--m", type=int, help="decomposition gap")
    parser.add_argument("--k", type=int, help="modifier order")
    parser.add_argument("--precision-bits", type=int, default=None)
    parser.add_argument("--rel-tol", default=None)
    parser.add_argument("--abs-tol", default=None)
    parser.add_argument("--format", choices=("csv", "json"), default="json")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    return parser


def config_from_args(args) -> RunConfig:
    if args.table is not None:
        command = "table"
    elif args.grid:
        command = "grid"
    elif args.verify:
        command = "verify"
    else:
        command = "decompose"
    bits = args.precision_bits
    if bits is None:
        bits = int(os.environ.get(ENV_PRECISION, "256"))
    return RunConfig(
        command=command,
        table_id=args.table,
        family=args.family,
        lam=args.lam,
        phi=args.phi,
        a=args.a,
        b=args.b,
        n=args.n,
        m=args.m,
        k=args.k,
        precision_bits=bits,
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        fmt=args.format,
        out=args.out,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        report = dispatch(config)
    except (ValueError, ArithmeticError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    text = report.to_csv() if config.fmt == "csv" else report.to_json()
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
