"""Parametric family sweeps written as CSV.

A family file is JSON with a ``family`` key:

    {"family": "rectangle_aspect", "values": [1, 2, 4]}
    {"family": "rectangle_aspect", "range": {"start": 1, "stop": 10, "num": 10}}
    {"family": "star_epsilon", "cos": [1.0], "sin": [0.0], "range": {...}}
    {"family": "explicit", "domains": [{"type": "ball", "radius": 1}, ...]}

Optional keys: ``eigen`` (default true) and ``resolution``.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from ..domains import DomainError, RadialProfile, Rectangle, StarShaped, spec_from_dict
from .suites import C_TILDE, parallel_map, domain_record, eigen_record

COLUMNS = (
    "label", "param", "kappa", "kappa_ball", "lambda1", "lambda2", "mu2", "diameter", "inradius",
    "margin_ball", "margin_weak_ball", "margin_diameter", "margin_lambda2", "margin_mu2", "error",
)
STAR_NODES = 512


def _parameter_values(fam):
    if "values" in fam:
        return [float(v) for v in fam["values"]]
    if "range" in fam:
        r = fam["range"]
        return [float(v) for v in np.linspace(float(r["start"]), float(r["stop"]), int(r["num"]))]
    raise DomainError("family needs 'values' or 'range'")


def family_items(fam):
    """[(label, param, spec)] for a parsed family description."""
    kind = fam.get("family")
    if kind == "rectangle_aspect":
        out = []
        for a in _parameter_values(fam):
            if a <= 0:
                raise DomainError("aspect must be positive")
            # sides a x 1, so kappa = 2 pi / a for a >= 1
            out.append((f"rectangle a={a:g}", a, Rectangle((a / 2, 0.5))))
        return out
    if kind == "star_epsilon":
        prof = RadialProfile(tuple(fam.get("cos", (1.0,))), tuple(fam.get("sin", ())))
        return [(f"star eps={e:g}", e, StarShaped(prof, e, 1.0, STAR_NODES)) for e in _parameter_values(fam)]
    if kind == "explicit":
        doms = fam.get("domains")
        if not isinstance(doms, list):
            raise DomainError("explicit family needs a 'domains' list")
        return [(d.get("label", f"domain-{i}"), float(i), spec_from_dict(d)) for i, d in enumerate(doms)]
    raise DomainError(f"unknown family {kind!r}")


def load_family(path):
    with open(path) as fh:
        try:
            fam = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(fam, dict):
        raise DomainError("family file must hold a JSON object")
    return fam


def _row(job):
    (label, param, spec), eigen, resolution = job
    row = dict.fromkeys(COLUMNS, "")
    row.update(label=label, param=param)
    try:
        rec = domain_record((label, spec), resolution)
        k, kb = rec["kappa"], rec["kappa_ball"]
        row.update(kappa=k, kappa_ball=kb, diameter=rec["diameter"], inradius=rec["inradius"],
                   margin_ball=kb - k, margin_weak_ball=C_TILDE * kb - k,
                   margin_diameter=4 * math.pi / rec["diameter"] - k)
        if eigen:
            ev = eigen_record((label, spec))
            row.update(lambda1=ev["lambda1"], lambda2=ev["lambda2"], mu2=ev["mu2"],
                       margin_lambda2=math.sqrt(ev["lambda2"]) - k, margin_mu2=k - 2 * math.sqrt(ev["mu2"]))
    except (ArithmeticError, DomainError, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(fam, workers=1, resolution=None):
    eigen = bool(fam.get("eigen", True))
    resolution = resolution or fam.get("resolution")
    jobs = [(item, eigen, resolution) for item in family_items(fam)]
    return parallel_map(_row, jobs, workers)


def _fmt(v):
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in COLUMNS])
    return buf.getvalue()
