"""Command-line front end.

Results go to stdout as JSON lines (or CSV / plain text), diagnostics go to
stderr. Exit status: 0 verified or computed, 1 verification failure,
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from . import intersection, localcurve, series
from .laurent import format_fraction

log = logging.getLogger("gv4calc")

SUBCOMMANDS = ("local-curve", "local-surface", "elliptic", "series", "invert")
FORMATS = ("json", "csv", "human")


class RequestError(ValueError):
    """Invalid command parameters (exit status 2)."""


@dataclass
class CommandRequest:
    subcommand: str
    action: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"
    parallelism: int = 1
    timings: bool = False

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise RequestError(f"unknown subcommand {self.subcommand!r}")
        if self.output_format not in FORMATS:
            raise RequestError(f"unknown output format {self.output_format!r}")
        if self.parallelism < 1:
            raise RequestError("parallelism must be at least 1")

    def echo(self) -> dict:
        return {"subcommand": self.subcommand, "action": self.action,
                "parameters": {k: v for k, v in sorted(self.parameters.items()) if v is not None}}


@dataclass
class ResultRecord:
    request: dict
    results: List[dict]
    exit_status: str
    diagnostic: str = ""
    timings: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.exit_status == "failed" and not self.diagnostic:
            raise ValueError("a failed result needs a diagnostic")

    @property
    def exit_code(self) -> int:
        return 1 if self.exit_status == "failed" else 0

    def summary(self) -> dict:
        out = {"request": self.request, "exit_status": self.exit_status,
               "results": len(self.results)}
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        if self.timings:
            out["timings"] = self.timings
        return out


# -- local curves ---------------------------------------------------------------------

def sweep_params(r: int) -> List[localcurve.LocalCurveParams]:
    """Normalized genus-zero triples from all (l1, l2) with |l1|, |l2| <= r."""
    seen = {}
    for l1 in range(-r, r + 1):
        for l2 in range(-r, l1 + 1):
            p = localcurve.LocalCurveParams.genus_zero(l1, l2)
            seen.setdefault(p.key, p)
    return [seen[k] for k in sorted(seen)]


def _verify_one(key) -> localcurve.VerificationRecord:
    genus, l1, l2, l3 = key
    return localcurve.verify_conjecture_deg2(localcurve.LocalCurveParams(genus, l1, l2, l3))


def run_verifications(params: Sequence[localcurve.LocalCurveParams], workers: int):
    keys = sorted({p.key for p in params})
    if workers > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_verify_one, keys))
    else:
        records = [_verify_one(k) for k in keys]
    # map keeps input order; reattach the caller's raw triple
    by_key = dict(zip(keys, records))
    seen, out = set(), []
    for p in params:
        if p.key not in seen:
            seen.add(p.key)
            out.append(dataclasses.replace(by_key[p.key], params=p))
    return sorted(out, key=lambda r: r.params.key)


def _record_json(rec: localcurve.VerificationRecord, full: bool, timings: bool) -> dict:
    out = rec.to_json(full=full)
    if not timings:
        out.pop("wall_time_ms")
    if full:
        out["expressions"] = {
            "dt4_1": rec.dt4_1.reduced().to_str(),
            "dt4_2": rec.dt4_2.reduced().to_str(),
            "gw2": rec.gw2.reduced().to_str(),
        }
    return out


def _local_curve(req: CommandRequest) -> ResultRecord:
    prm = req.parameters
    if req.action != "verify":
        raise RequestError(f"unknown local-curve action {req.action!r}")
    if prm.get("range") is not None:
        if prm["range"] < 0:
            raise RequestError("--range must be nonnegative")
        params = sweep_params(prm["range"])
        full = bool(prm.get("full"))
    else:
        if prm.get("l1") is None or prm.get("l2") is None:
            raise RequestError("local-curve verify needs --l1 and --l2, or --range")
        g = prm.get("genus") or 0
        l3 = prm.get("l3")
        if l3 is None:
            l3 = 2 * g - 2 - prm["l1"] - prm["l2"]
        try:
            p = localcurve.LocalCurveParams(g, prm["l1"], prm["l2"], l3)
        except ValueError as exc:
            raise RequestError(str(exc)) from exc
        if p.was_normalized:
            log.warning("normalized (l1, l2, l3) = %s to %s", p.raw, (p.l1, p.l2, p.l3))
        params = [p]
        full = True
    t0 = time.perf_counter()
    records = run_verifications(params, req.parallelism)
    results = [_record_json(r, full, req.timings) for r in records]
    bad = [r.params.key for r in records if not r.verified]
    timings = {"total_ms": int((time.perf_counter() - t0) * 1000)} if req.timings else {}
    if bad:
        return ResultRecord(req.echo(), results, "failed", f"{len(bad)} case(s) not verified: {bad}", timings)
    return ResultRecord(req.echo(), results, "verified", timings=timings)


# -- intersection computations -----------------------------------------------------------

def _local_surface(req: CommandRequest) -> ResultRecord:
    if req.action == "p2":
        d = req.parameters.get("degree")
        if d not in (1, 2, 3):
            raise RequestError("local-surface p2 supports --degree 1, 2 or 3")
        res = intersection.local_surface_result("P2", d)
    elif req.action == "p1xp1":
        res = intersection.local_surface_result("P1xP1", (2, 2))
    else:
        raise RequestError(f"unknown local-surface action {req.action!r}")
    return ResultRecord(req.echo(), [res.to_json()], "computed")


def _elliptic(req: CommandRequest) -> ResultRecord:
    if req.action != "c3":
        raise RequestError(f"unknown elliptic action {req.action!r}")
    R, X, cX = intersection.weierstrass_data()
    c1_zero = not cX.degree_part(1).terms
    value = intersection.elliptic_c3_integral()
    b2 = intersection.elliptic_fiber_invariant("B2")
    be = intersection.elliptic_fiber_invariant("BE")
    res = {"B.c3": format_fraction(value), "DT4(f|B^2)/r": format_fraction(b2),
           "DT4(f|B.E)/r": format_fraction(be), "c1_vanishes": c1_zero}
    ok = c1_zero and abs(value) == 960 and b2 == 0 and abs(be) == 960
    if not ok:
        return ResultRecord(req.echo(), [res], "failed", "elliptic fibration checks did not match")
    return ResultRecord(req.echo(), [res], "verified")


# -- series ---------------------------------------------------------------------------------

def _data(text, name: str, max_degree=None) -> series.DegreeIndexedData:
    if text is None:
        raise RequestError(f"missing --{name}")
    try:
        raw = json.loads(text)
        if not isinstance(raw, dict):
            raise ValueError("expected a JSON object")
        return series.DegreeIndexedData.from_json(raw, max_degree)
    except (ValueError, ZeroDivisionError) as exc:
        raise RequestError(f"bad --{name}: {exc}") from exc


def _order(prm) -> int:
    n = prm.get("order")
    if n is None or n < 0:
        raise RequestError("--order must be a nonnegative integer")
    return n


def _series(req: CommandRequest) -> ResultRecord:
    prm = req.parameters
    if req.action == "eta":
        if prm.get("exponent") is None:
            raise RequestError("series eta needs --exponent")
        out = series.eta_power(prm["exponent"], _order(prm))
    elif req.action == "macmahon":
        out = series.macmahon(_order(prm))
    elif req.action == "p0":
        try:
            out = series.p0_series_from_n1(_data(prm.get("n1"), "n1"), _order(prm))
        except ValueError as exc:
            raise RequestError(str(exc)) from exc
    elif req.action == "nnb":
        if prm.get("n") is None or prm.get("d") is None or prm["d"] < 1:
            raise RequestError("series nnb needs --n and a positive --d")
        v = series.nnb_multiple_cover(_data(prm.get("dt3"), "dt3"), prm["n"], prm["d"])
        return ResultRecord(req.echo(), [{"n": prm["n"], "d": prm["d"], "N": format_fraction(v)}], "computed")
    else:
        raise RequestError(f"unknown series action {req.action!r}")
    return ResultRecord(req.echo(), [out.to_json()], "computed")


def _invert(req: CommandRequest) -> ResultRecord:
    prm = req.parameters
    if req.action == "kp":
        if prm.get("n") is None or prm["n"] < 0:
            raise RequestError("invert kp needs a nonnegative --n")
        out = series.kp_genus0_invert(_data(prm.get("data"), "data"), prm["n"])
        return ResultRecord(req.echo(), [out.to_json()], "computed")
    if req.action == "cy3":
        out = series.cy3_gv_invert(_data(prm.get("data"), "data"))
        return ResultRecord(req.echo(), [out.to_json()], "computed")
    if req.action == "check":
        gw = _data(prm.get("gw"), "gw")
        dt4 = _data(prm.get("dt4"), "dt4")
        top = max(gw.max_degree, dt4.max_degree)
        gw.max_degree = dt4.max_degree = top
        if prm.get("power") not in (2, 3):
            raise RequestError("--power must be 2 or 3")
        ok = series.multiple_cover_check(gw, dt4, prm["power"])
        res = [{"holds": ok, "max_degree": top, "power": prm["power"]}]
        if not ok:
            return ResultRecord(req.echo(), res, "failed", "multiple cover formula does not hold")
        return ResultRecord(req.echo(), res, "verified")
    raise RequestError(f"unknown invert action {req.action!r}")


HANDLERS = {
    "local-curve": _local_curve,
    "local-surface": _local_surface,
    "elliptic": _elliptic,
    "series": _series,
    "invert": _invert,
}


def dispatch(request: CommandRequest) -> ResultRecord:
    request.validate()
    return HANDLERS[request.subcommand](request)


# -- output -----------------------------------------------------------------------------------

def _flatten(row: dict) -> dict:
    return {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in row.items()}


def render(record: ResultRecord, fmt: str) -> str:
    if fmt == "json":
        lines = [json.dumps(r, sort_keys=True) for r in record.results]
        lines.append(json.dumps(record.summary(), sort_keys=True))
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if record.request["subcommand"] == "local-curve":
            cols = ["l1", "l2", "l3", "verified", "wall_time_ms"]
            w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
            w.writeheader()
            for r in record.results:
                w.writerow({c: r.get(c, "") for c in cols})
        elif record.results and "coeffs" in record.results[0]:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["power", "coeff"])
            for i, c in enumerate(record.results[0]["coeffs"]):
                w.writerow([i, c])
        else:
            rows = [_flatten(r) for r in record.results]
            cols = sorted({k for r in rows for k in r})
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    # human
    lines = []
    for r in record.results:
        if "coeffs" in r:
            lines.append(", ".join(_pretty(c) for c in r["coeffs"]))
        elif "verified" in r and "l3" in r:
            lines.append(f"g={r['genus']} (l1,l2,l3)=({r['l1']},{r['l2']},{r['l3']}): "
                         f"{'verified' if r['verified'] else 'FAILED'}")
            for name, expr in r.get("expressions", {}).items():
                lines.append(f"  {name} = {expr}")
        elif "value" in r:
            lines.append(f"{r['surface']} degree {tuple(r['degree'])}: {_pretty(r['value'])}")
        elif all(k.isdigit() for k in r):
            lines.append(", ".join(f"{k}: {_pretty(v)}" for k, v in r.items()))
        else:
            lines.append(", ".join(f"{k} = {_pretty(v) if isinstance(v, str) else v}" for k, v in r.items()))
    lines.append(f"status: {record.exit_status}" + (f" ({record.diagnostic})" if record.diagnostic else ""))
    return "\n".join(lines) + "\n"


def _pretty(c: str) -> str:
    return str(Fraction(c))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gv4calc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output-format", choices=FORMATS, default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    lc = sub.add_parser("local-curve").add_subparsers(dest="action", required=True)
    v = lc.add_parser("verify", parents=[common])
    v.add_argument("--l1", type=int)
    v.add_argument("--l2", type=int)
    v.add_argument("--l3", type=int)
    v.add_argument("--genus", type=int, default=0)
    v.add_argument("--range", type=int)
    v.add_argument("--full", action="store_true", help="emit expressions in sweeps too")

    ls = sub.add_parser("local-surface").add_subparsers(dest="action", required=True)
    p2 = ls.add_parser("p2", parents=[common])
    p2.add_argument("--degree", type=int, required=True)
    ls.add_parser("p1xp1", parents=[common])

    el = sub.add_parser("elliptic").add_subparsers(dest="action", required=True)
    el.add_parser("c3", parents=[common])

    se = sub.add_parser("series").add_subparsers(dest="action", required=True)
    eta = se.add_parser("eta", parents=[common])
    eta.add_argument("--exponent", type=int, required=True)
    eta.add_argument("--order", type=int, required=True)
    mm = se.add_parser("macmahon", parents=[common])
    mm.add_argument("--order", type=int, required=True)
    p0 = se.add_parser("p0", parents=[common])
    p0.add_argument("--n1", required=True, help='JSON map, e.g. {"1": "1"}')
    p0.add_argument("--order", type=int, required=True)
    nb = se.add_parser("nnb", parents=[common])
    nb.add_argument("--dt3", required=True)
    nb.add_argument("--n", type=int, required=True)
    nb.add_argument("--d", type=int, required=True)

    inv = sub.add_parser("invert").add_subparsers(dest="action", required=True)
    kp = inv.add_parser("kp", parents=[common])
    kp.add_argument("--n", type=int, required=True, help="number of insertions")
    kp.add_argument("--data", required=True)
    c3 = inv.add_parser("cy3", parents=[common])
    c3.add_argument("--data", required=True)
    ck = inv.add_parser("check", parents=[common])
    ck.add_argument("--gw", required=True)
    ck.add_argument("--dt4", required=True)
    ck.add_argument("--power", type=int, required=True)
    return parser


_COMMON_KEYS = {"subcommand", "action", "output_format", "workers", "timings", "verbose"}


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    workers = args.workers
    env = os.environ.get("GV4CALC_WORKERS")
    if env:
        try:
            workers = int(env)
        except ValueError as exc:
            raise RequestError(f"GV4CALC_WORKERS must be an integer, got {env!r}") from exc
    params = {k: v for k, v in vars(args).items() if k not in _COMMON_KEYS}
    return CommandRequest(args.subcommand, args.action, params, args.output_format, workers, args.timings)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        req = request_from_args(args)
        record = dispatch(req)
    except RequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(record, req.output_format))
    if record.diagnostic:
        print(record.diagnostic, file=sys.stderr)
    return record.exit_code


if __name__ == "__main__":
    sys.exit(main())
