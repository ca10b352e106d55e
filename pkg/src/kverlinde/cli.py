"""Command-line front end.

    kverlinde index SPEC.json   [--order N] [--backend exact|float|both] [--threads T] [--out PATH]
    kverlinde pairing SPEC.json [--order N] [--backend ...] [--threads T] [--out PATH]
    kverlinde verify SUITE      [--threads T] [--out PATH]

Exit codes: 0 success, 2 invalid specification, 3 computation error (or a
failed verification suite).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from .characters import NonDominant, trivial_character, weight_multiplicities
from .engine import IndexJob, index_pairing
from .lie import UnsupportedType, build_root_datum
from .pairings import (
    InsufficientSamples,
    NotInLattice,
    PairingRequest,
    ValidationMismatch,
    fit_minimal_degree,
    intersection_number,
    pairing_table,
    quasi_poly_fit,
    rows_to_csv,
)
from .scalars import NotRational, cyclo_rationalize, cyclo_to_float
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_COMPUTE = 3


class SpecError(Exception):
    def __init__(self, errors: list[dict]):
        super().__init__("; ".join(f"{e['path']}: {e['message']}" for e in errors))
        self.errors = errors


def _schema(name: str) -> dict:
    return json.loads(resources.files("kverlinde").joinpath("schemas", f"{name}.schema.json").read_text())


def _load_spec(path: str, kind: str) -> dict:
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise SpecError([{"path": "$", "message": f"cannot read spec: {exc}"}]) from exc
    except json.JSONDecodeError as exc:
        raise SpecError([{"path": "$", "message": f"invalid JSON: {exc}"}]) from exc
    validator = jsonschema.Draft202012Validator(_schema(kind))
    errors = sorted(validator.iter_errors(spec), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        raise SpecError([{"path": "$" + "".join(f"[{p!r}]" for p in e.absolute_path), "message": e.message} for e in errors])
    return spec


def _datum(spec: dict, errors: list[dict]):
    try:
        return build_root_datum(spec["type"], spec["rank"])
    except UnsupportedType as exc:
        errors.append({"path": "$['type']", "message": str(exc)})
        return None


def _rep(d, obj: dict, path: str, errors: list[dict]):
    hw = tuple(obj["highest_weight"])
    if len(hw) != d.rank:
        errors.append({"path": path, "message": f"highest weight needs {d.rank} coordinates"})
        return None
    try:
        c = weight_multiplicities(d, hw)
    except NonDominant as exc:
        errors.append({"path": path, "message": str(exc)})
        return None
    return c.dual() if obj.get("dual") else c


def build_job(spec: dict, order: int | None = None) -> IndexJob:
    errors: list[dict] = []
    d = _datum(spec, errors)
    if d is None:
        raise SpecError(errors)
    if spec["level"] + d.dual_coxeter < 1:
        errors.append({"path": "$['level']", "message": f"level must exceed -h^vee = {-d.dual_coxeter}"})
    v = _rep(d, spec["deformation"], "$['deformation']", errors) if "deformation" in spec else trivial_character(d)
    boundary = [_rep(d, b, f"$['boundary'][{i}]", errors) for i, b in enumerate(spec.get("boundary", []))]
    u0 = _rep(d, spec["point_insertion"], "$['point_insertion']", errors) if "point_insertion" in spec else None
    pair = None
    if "curve_pair" in spec:
        cp = spec["curve_pair"]
        u1 = _rep(d, cp["u1"], "$['curve_pair']['u1']", errors)
        u2 = _rep(d, cp["u2"], "$['curve_pair']['u2']", errors)
        pair = (u1, u2, cp["intersection"])
    if errors:
        raise SpecError(errors)
    return IndexJob(
        d, spec["genus"], spec["level"], v, spec.get("order", 0) if order is None else order, boundary, u0, pair
    )


def build_request(spec: dict, order: int | None = None) -> PairingRequest:
    errors: list[dict] = []
    d = _datum(spec, errors)
    if d is None:
        raise SpecError(errors)
    v = trivial_character(d)
    if "deformation" in spec:
        v = _rep(d, spec["deformation"], "$['deformation']", errors)
    weights = []
    for i, a in enumerate(spec.get("weights", [])):
        if len(a) != d.rank:
            errors.append({"path": f"$['weights'][{i}]", "message": f"needs {d.rank} coordinates"})
            continue
        w = tuple(Fraction(x) for x in a)
        if any(x < 0 for x in w):
            errors.append({"path": f"$['weights'][{i}]", "message": "alcove weights must be dominant"})
        weights.append(w)
    levels = list(spec["levels"]) + list(spec.get("validation_levels", []))
    for k in levels:
        if k + d.dual_coxeter < 1:
            errors.append({"path": "$['levels']", "message": f"level {k} must exceed -h^vee = {-d.dual_coxeter}"})
        for i, w in enumerate(weights):
            if any((k * x).denominator != 1 for x in w):
                errors.append({"path": f"$['weights'][{i}]", "message": f"k * a is not an integral weight for k = {k}"})
    mode = spec.get("mode", "multiplicity")
    n = spec.get("order", 1 if mode == "derivative" else 0) if order is None else order
    if mode == "derivative" and n < 1:
        errors.append({"path": "$['order']", "message": "derivative mode needs order >= 1"})
    if errors:
        raise SpecError(errors)
    return PairingRequest(d, spec["genus"], weights, levels, v, n, mode, spec.get("period"))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, errors: list[dict], code: int) -> int:
    sys.stderr.write(_dump({"error": kind, "details": errors}))
    return code


def _float_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def cmd_index(args) -> int:
    try:
        spec = _load_spec(args.spec, "job")
        job = build_job(spec, args.order)
    except SpecError as exc:
        return _error("spec", exc.errors, EXIT_SPEC)
    opts = spec.get("output", {})
    backend = args.backend or ("both" if opts.get("float_shadow") else "exact")
    try:
        exact = index_pairing(job, "exact", args.threads) if backend in ("exact", "both") else None
        approx = index_pairing(job, "float", args.threads) if backend in ("float", "both") else None
    except (ArithmeticError, ValueError) as exc:
        return _error("computation", [{"path": "$", "message": str(exc)}], EXIT_COMPUTE)
    fmt = opts.get("format", "json")
    if fmt == "csv":
        rows = []
        for j in range(job.order + 1):
            rat = ""
            if exact is not None:
                try:
                    rat = str(cyclo_rationalize(exact.total[j]))
                except NotRational:
                    rat = repr(exact.total[j])
            z = approx.total[j] if approx is not None else cyclo_to_float(exact.total[j])
            rows.append([job.level, j, rat, repr(z.real), repr(z.imag)])
        text = "k,t_order,value_rational,value_float_re,value_float_im\n" + "".join(
            ",".join(str(x) for x in r) + "\n" for r in rows
        )
        _emit(text, args.out)
        return EXIT_OK
    body: dict = {"job": spec, "order": job.order, "backend": backend}
    if exact is not None:
        body["result"] = exact.to_json(include_breakdown=opts.get("breakdown", False))
        rats = []
        for c in exact.total.coeffs:
            try:
                rats.append(str(cyclo_rationalize(c)))
            except NotRational:
                rats.append(None)
        body["rational"] = rats
    if approx is not None:
        body["float"] = [_float_pair(c) for c in approx.total.coeffs]
        if opts.get("breakdown", False):
            body["float_breakdown"] = [
                {"representative": list(lam), "summand": [_float_pair(c) for c in s.coeffs]} for lam, s in approx.breakdown
            ]
    _emit(_dump(body), args.out)
    return EXIT_OK


def cmd_pairing(args) -> int:
    try:
        spec = _load_spec(args.spec, "pairing")
        req = build_request(spec, args.order)
    except (SpecError, NotInLattice) as exc:
        errs = exc.errors if isinstance(exc, SpecError) else [{"path": "$['weights']", "message": str(exc)}]
        return _error("spec", errs, EXIT_SPEC)
    opts = spec.get("output", {})
    backend = args.backend or ("both" if opts.get("float_shadow") else "exact")
    try:
        rows, series = pairing_table(req, backend, args.threads)
    except (ArithmeticError, ValueError) as exc:
        return _error("computation", [{"path": "$", "message": str(exc)}], EXIT_COMPUTE)

    # quasi-polynomial in k of the extracted value; needs exact values
    fit_block: dict = {"fitted": None}
    if series:
        j = 1 if req.mode == "derivative" else 0
        samples, failed = [], []
        for k in sorted(set(spec["levels"])):
            try:
                v = intersection_number(req, k, series=series[k]) if j == 1 else cyclo_rationalize(series[k][0])
                samples.append((k, v))
            except NotRational:
                failed.append(k)
        held = []
        for k in spec.get("validation_levels", []):
            try:
                held.append((k, cyclo_rationalize(series[k][j])))
            except NotRational:
                failed.append(k)
        period = req.period or req.default_period
        residues = req.admissible_residues(period)
        try:
            if failed:
                raise ValidationMismatch(f"values at k = {failed} are not rational")
            if "degree" in spec:
                qp = quasi_poly_fit(samples, period, spec["degree"], held, residues)
            else:
                per_class = min(sum(1 for k, _ in samples if k % period == r) for r in residues)
                qp = fit_minimal_degree(samples, period, max(per_class - 2, 0), held, residues)
            fit_block = {
                "fitted": qp.to_json(),
                "t_order": j,
                "comparison": [
                    {"k": k, "direct": str(v), "fitted": str(qp(k)), "agree": qp(k) == v} for k, v in samples + held
                ],
            }
        except (InsufficientSamples, ValidationMismatch) as exc:
            fit_block = {"fitted": None, "t_order": j, "reason": str(exc)}

    if opts.get("format", "json") == "csv":
        text = rows_to_csv(rows)
        if args.out:
            _emit(text, args.out)
            _emit(_dump(fit_block), args.out + ".quasipoly.json")
        else:
            sys.stdout.write(text + "\n" + _dump(fit_block))
        return EXIT_OK
    body = {
        "request": spec,
        "backend": backend,
        "rows": [
            {
                "k": r.k,
                "t_order": r.t_order,
                "value_rational": r.rational() or None,
                "exact": r.exact.to_json() if r.exact is not None else None,
                "float": _float_pair(r.approx) if r.approx is not None else None,
            }
            for r in rows
        ],
        "quasi_poly": fit_block,
    }
    _emit(_dump(body), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        return _error("spec", [{"path": "suite", "message": f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}"}], EXIT_SPEC)
    try:
        report = run_suite(args.suite, args.threads)
    except (ArithmeticError, ValueError) as exc:
        return _error("computation", [{"path": "$", "message": str(exc)}], EXIT_COMPUTE)
    _emit(_dump(report), args.out)
    failed = sum(not c["equal"] for c in report["cases"])
    sys.stderr.write(f"{args.suite}: {len(report['cases']) - failed}/{len(report['cases'])} cases agree\n")
    return EXIT_OK if report["passed"] else EXIT_COMPUTE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kverlinde", description="Deformed Verlinde sums and quotient pairings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_order=True):
        if with_order:
            sp.add_argument("--order", type=int, default=None, help="truncation order in t (overrides the spec)")
            sp.add_argument("--backend", choices=["exact", "float", "both"], default=None)
        sp.add_argument("--threads", type=int, default=int(os.environ.get("KVERLINDE_THREADS", "1")))
        sp.add_argument("--out", default=None, help="output file (default: stdout)")

    sp = sub.add_parser("index", help="evaluate one index pairing")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("pairing", help="multiplicity table over levels with a quasi-polynomial fit")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(func=cmd_pairing)

    sp = sub.add_parser("verify", help="run an oracle suite")
    sp.add_argument("suite")
    common(sp, with_order=False)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 0:
        return _error("spec", [{"path": "--order", "message": "must be non-negative"}], EXIT_SPEC)
    if args.threads < 1:
        return _error("spec", [{"path": "--threads", "message": "must be positive"}], EXIT_SPEC)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
