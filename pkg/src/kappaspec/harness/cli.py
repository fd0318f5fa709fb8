"""Command-line entry point: ``python -m kappaspec <command> ...``.

Exit codes: 0 pass, 1 a check failed, 2 usage or parse error,
3 numerical failure, 4 domain not supported by the requested command.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .. import __version__
from ..domains import DomainError, RadialProfile, spec_from_dict, spec_to_dict
from .report import Check, VerificationReport

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NUMERIC, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class ParseError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc


def _load_spec(path):
    if path is None:
        raise ParseError("--spec is required")
    try:
        return spec_from_dict(_read_json(path))
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows, header):
    cells = [[_cell(v) for v in r] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.10g}"
    return str(v)


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _render(args, payload, header, rows):
    if args.format == "json":
        return json.dumps(payload, indent=1, default=_json_default) + "\n"
    if args.format == "csv":
        return _csv(rows, header)
    return _table(rows, header)


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    return str(o)


# ---------------------------------------------------------------------------
# commands


def cmd_kappa(args):
    from ..nullvariety import kappa

    spec = _load_spec(args.spec)
    res = kappa(spec, args.resolution or 720, bound=args.bound)
    value = res.kappa if not res.finite else float(res.kappa)
    payload = {"domain": spec_to_dict(spec), "kappa": str(value) if not res.finite else value,
               "argmin_direction": res.argmin_direction, "search_bound": res.search_bound,
               "resolution": args.resolution or 720}
    if args.format == "csv":
        # the null curve samples (direction, first root)
        rows = [(float(a), float(r)) for a, r in res.per_direction_roots]
        _emit(_csv(rows, ("direction", "kappa_1")), args.out)
        return EXIT_OK
    _emit(_render(args, payload, ("kappa", "argmin_direction", "search_bound"),
                  [(value, res.argmin_direction, res.search_bound)]), args.out)
    return EXIT_OK


def cmd_eigen(args):
    from ..spectral import dirichlet_eigs, neumann_eigs

    spec = _load_spec(args.spec)
    count = args.count or 5
    lam = dirichlet_eigs(spec, count, collocation=args.collocation)
    mu = neumann_eigs(spec, count, collocation=args.collocation)
    rows = [(k + 1, lam.dirichlet[k], lam.accuracy[k], mu.neumann[k], mu.accuracy[k]) for k in range(count)]
    payload = {"domain": spec_to_dict(spec), "dirichlet": lam.dirichlet, "dirichlet_accuracy": lam.accuracy,
               "neumann": mu.neumann, "neumann_accuracy": mu.accuracy, "method": lam.method}
    _emit(_render(args, payload, ("k", "lambda_k", "lambda_acc", "mu_k", "mu_acc"), rows), args.out)
    return EXIT_OK


def _report_text(args, rep):
    if args.format == "json":
        return rep.to_json() + "\n"
    if args.format == "csv":
        return rep.to_csv()
    return rep.to_table().rstrip("\n") + "\n"


def cmd_verify(args):
    from .suites import SUITES, run_suite

    if args.suite not in SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    kw = {"seed": args.seed, "count": args.count, "workers": args.workers}
    if args.resolution:
        kw["resolution"] = args.resolution
    rep = run_suite(args.suite, **kw)
    _emit(_report_text(args, rep), args.out)
    return EXIT_OK if rep.passed else EXIT_CHECK


def cmd_sweep(args):
    from .sweep import family_items, load_family, rows_to_csv, run_sweep

    if args.spec is None:
        raise ParseError("--spec FAMILY_FILE is required")
    try:
        fam = load_family(args.spec)
        family_items(fam)
    except OSError as exc:
        raise ParseError(f"cannot read {args.spec}: {exc.strerror}") from exc
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    rows = run_sweep(fam, args.workers, args.resolution)
    _emit(rows_to_csv(rows), args.out)
    return EXIT_CHECK if any(r["error"] for r in rows) else EXIT_OK


def cmd_counterexample(args):
    from .. import counterex

    if args.kind == "spiky":
        prof = counterex.select_delta(args.delta_tilde)
        n = args.n
        rep = counterex.verify_spiky(n, prof, directions=args.resolution or 720, points=args.points)
        vr = VerificationReport("counterexample spiky", domain=spec_to_dict(counterex.spiky_domain(n, prof)),
                                provenance={"version": __version__, "delta_tilde": prof.delta_tilde,
                                            "delta": prof.delta, "directions": rep.directions,
                                            "points": rep.points, "limit_deviation": rep.gap})
        vr.add(Check(f"min chi_hat over grid of (0, j11], n = {n}", rep.minimum, 0.0, ">",
                     "spiky counterexample"))
        _emit(_report_text(args, vr), args.out)
        return EXIT_OK if vr.passed else EXIT_CHECK
    if args.kind == "nazarov":
        C = args.bound if args.bound is not None else 5.0
        inst = counterex.nazarov_search(C, args.seed or 0)
        b = counterex.interval_union_kappa(inst)
        if args.out:
            _emit(inst.to_json() + "\n", args.out)
        rows = [(inst.C, inst.n, inst.count, inst.grid_min, inst.dip_bound, b.product)]
        payload = dict(inst.as_dict(), kappa_volume_bound=b.product)
        sys.stdout.write(_render(args, payload, ("C", "n", "count", "grid_min", "dip_bound", "kappa_vol_lower"),
                                 rows))
        return EXIT_OK
    # replay: re-certify a stored instance
    if args.spec is None:
        raise ParseError("replay needs --spec CERTIFICATE")
    try:
        inst = counterex.NazarovInstance.from_dict(_read_json(args.spec))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from exc
    lo, dip = counterex.certify(inst.frequencies, inst.C, inst.n, inst.grid_points)
    vr = VerificationReport("counterexample replay", provenance={"version": __version__, "source": args.spec})
    vr.add(Check("recomputed grid minimum > dip bound", lo, dip, ">", "interval union certificate"))
    vr.add(Check("recomputed grid minimum = stored", lo, inst.grid_min, "==", "certificate replay", tol=1e-9))
    vr.add(Check("count/n >= 1/10", inst.count / inst.n, 0.1, ">=", "interval union certificate"))
    _emit(_report_text(args, vr), None)
    return EXIT_OK if vr.passed else EXIT_CHECK


def cmd_perturb(args):
    from .. import perturb

    if args.spec:
        data = _read_json(args.spec)
        try:
            F = RadialProfile(tuple(data.get("cos", ())), tuple(data.get("sin", ())))
        except (AttributeError, TypeError, ValueError, DomainError) as exc:
            raise ParseError(f"malformed profile: {exc}") from exc
    else:
        F = RadialProfile((1.0,), ())
    rep = perturb.perturbation_report(F)
    payload = {"cos": list(F.cos_coeffs), "sin": list(F.sin_coeffs), **rep.__dict__}
    rows = [(rep.d_kappa, rep.d_sqrt_lambda2, rep.lhs_p1, rep.rhs_p1, rep.rotation_angle)]
    _emit(_render(args, payload, ("d_kappa", "d_sqrt_lambda2", "p1_lhs", "p1_rhs", "rotation"), rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="domain / family / certificate JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int)
    common.add_argument("--resolution", type=int, help="angular directions")
    common.add_argument("--bound", type=float)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("table", "csv", "json", "json-shaped"), default="table")
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="kappaspec", description="Null variety of indicator transforms.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("kappa", parents=[common], help="distance to the real null variety")
    e = sub.add_parser("eigen", parents=[common], help="Dirichlet and Neumann eigenvalues")
    e.add_argument("--collocation", action="store_true", help="force the collocation solver")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True)
    sub.add_parser("sweep", parents=[common], help="sweep a parametric family to CSV")
    c = sub.add_parser("counterexample", parents=[common], help="spiky / nazarov / replay")
    c.add_argument("kind", choices=("spiky", "nazarov", "replay"))
    c.add_argument("--n", type=int, default=256, help="spiky: number of spikes")
    c.add_argument("--delta-tilde", type=float, default=0.2)
    c.add_argument("--points", type=int, default=512, help="spiky: gamma grid size")
    sub.add_parser("perturb", parents=[common], help="first-order perturbation of the disk")
    return p


COMMANDS = {"kappa": cmd_kappa, "eigen": cmd_eigen, "verify": cmd_verify, "sweep": cmd_sweep,
            "counterexample": cmd_counterexample, "perturb": cmd_perturb}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "json-shaped":
        args.format = "json"
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
