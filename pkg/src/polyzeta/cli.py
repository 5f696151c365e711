"""Command-line front end.

A job is a JSON object (file or stdin) or built from flags::

    polyzeta --at-one --P "1" --A 2 1 --n 0 0 --verify
    polyzeta job.json --json

Exit status: 0 on success, 2 when the series is rejected as divergent,
3 when numeric verification fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .atone import AtOneConfig, decompose_at_one
from .bricks import Brick, Decomposition, certify_bounds, decompose_brick
from .mzv import MZVExpr
from .parsing import ParseError, parse_polynomial
from .pfd import pfd_terms
from .series import (DivergentSeriesError, MultSeries, check_convergence, check_log_divergence,
                     degree_profile, normalize_shifts)
from .sorokin import SorokinIntegral, series_from_integral

__all__ = ["JobSpec", "run", "main", "rat_text"]

MODES = ("decompose-at-one", "decompose-generic-z", "from-integral", "verify")


def rat_text(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


@dataclass
class JobSpec:
    mode: str = "decompose-at-one"
    series: Optional[Dict[str, Any]] = None  # {"P": text, "A": [...], "n": [...], "r": [...], "args": [[...]]}
    integral: Optional[Dict[str, Any]] = None  # {"D", "p", "r", "s", "t", "d"}
    z: Any = "one"  # "one", "symbolic" or a list of rationals as strings
    precision: int = 128
    cutoff: Optional[int] = None
    emit_certificate: bool = False
    verify: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "from-integral":
            if not self.integral:
                raise ValueError("from-integral needs an 'integral' block")
        elif not self.series:
            raise ValueError(f"{self.mode} needs a 'series' block")
        if self.mode == "decompose-generic-z" and self.z == "one":
            raise ValueError("generic-z mode needs z = 'symbolic' or a list of values")
        if self.z not in ("one", "symbolic"):
            if not isinstance(self.z, list):
                raise ValueError("z must be 'one', 'symbolic' or a list")
            self.z = [rat_text(Fraction(x)) for x in self.z]
        if self.precision < 64:
            raise ValueError("precision must be >= 64 bits")
        if self.series is not None:
            self.series = _canon_series(self.series)
        if self.integral is not None:
            self.integral = {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in self.integral.items()}
        # fail early on malformed numerators or shapes
        if self.mode == "from-integral":
            self.build_integral()
        else:
            self.build_series()

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "JobSpec":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown JobSpec fields {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "JobSpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def build_series(self) -> MultSeries:
        d = self.series
        p = len(d["A"])
        args = tuple(tuple(a) for a in d["args"]) if d.get("args") else ()
        return MultSeries(p, parse_polynomial(d["P"], p), tuple(d["A"]), tuple(d["n"]),
                          tuple(d.get("r") or ()), args)

    def build_integral(self) -> SorokinIntegral:
        d = self.integral
        return SorokinIntegral(int(d["D"]), int(d["p"]), tuple(d["r"]), tuple(d["s"]), tuple(d["t"]), tuple(d["d"]))


def _canon_series(d: Dict[str, Any]) -> Dict[str, Any]:
    out = {"P": str(d["P"]), "A": [int(x) for x in d["A"]], "n": [int(x) for x in d["n"]]}
    if d.get("r"):
        out["r"] = [int(x) for x in d["r"]]
    if d.get("args"):
        out["args"] = [[int(e) for e in a] for a in d["args"]]
    extra = set(d) - {"P", "A", "n", "r", "args"}
    if extra:
        raise ValueError(f"unknown series fields {sorted(extra)}")
    return out


# -- serialization of results -------------------------------------------------

def mzv_document(e: MZVExpr) -> Dict[str, Any]:
    return {
        "constant": rat_text(e.constant),
        "terms": [{"zeta": list(k), "coeff": rat_text(c)} for k, c in e.sorted_terms()],
    }


def laurent_document(lp) -> List[List[Any]]:
    return [[list(e), rat_text(c)] for e, c in lp.sorted_items()]


def decomposition_document(d: Decomposition) -> Dict[str, Any]:
    terms = []
    for (s, args), coeff in d.items():
        terms.append({"s": list(s), "args": [list(a) for a in args], "coeff": laurent_document(coeff)})
    return {"nvars": d.nvars, "terms": terms}


def diagnostics(s: MultSeries) -> Dict[str, Any]:
    prof = degree_profile(s)
    rows, acc = [], 0.0
    for j in range(s.p):
        acc += prof.degs[j]
        rows.append({"j": j + 1, "D_j": prof.Dj[j],
                     "degree_sum": None if acc == float("-inf") else int(acc),
                     "convergent": acc <= prof.Dj[j], "log_divergent": acc <= prof.Dj[j] + 1})
    return {"D_table": rows, "convergent": check_convergence(s), "log_divergent": check_log_divergence(s)}


def _zvals(job: JobSpec, s: MultSeries) -> List[Fraction]:
    if isinstance(job.z, list):
        if len(job.z) != s.nbase:
            raise ValueError(f"need {s.nbase} z values, got {len(job.z)}")
        return [Fraction(x) for x in job.z]
    return [Fraction(i + 2) for i in range(s.nbase)]


def _generic_certificate(s: MultSeries) -> List[Dict[str, Any]]:
    out = []
    for key in pfd_terms(s):
        if any(x <= 0 for _, x in key):
            continue
        b = Brick(tuple(x for _, x in key), (0,) * s.p, tuple(j for j, _ in key), s.args)
        cert = certify_bounds(b, decompose_brick(b, None, s.nbase))
        out.append({"s": list(b.s), "j": list(b.j), "scale": str(cert.scale), "degree_bound": cert.degree_bound,
                    "denominator_ok": cert.denominator_ok, "degree_ok": cert.degree_ok})
    return out


def _atone_certificate(s: MultSeries, e: MZVExpr) -> Dict[str, Any]:
    from math import lcm

    den = 1
    for c in [e.constant, *e.terms.values()]:
        den = lcm(den, c.denominator)
    bound = sum(s.A)
    return {"denominator_lcm": str(den), "weight_bound": bound, "max_weight": e.max_weight(),
            "weight_ok": e.max_weight() <= bound, "max_depth": e.max_depth(), "depth_ok": e.max_depth() <= s.p}


def run(job: JobSpec) -> Dict[str, Any]:
    """Execute a job; raises DivergentSeriesError on classifier rejection."""
    import mpmath

    from . import numeval

    doc: Dict[str, Any] = {"input": job.to_dict()}
    prefactor = None
    if job.mode == "from-integral":
        pref, s = series_from_integral(job.build_integral())
        prefactor = pref
        doc["prefactor"] = {"coeff": rat_text(pref.coeff), "zpow": pref.zpow}
        doc["series"] = {"P": s.P.to_text(), "A": list(s.A), "n": list(s.n), "r": list(s.r)}
    else:
        s = job.build_series()
    ns = normalize_shifts(s)
    doc["diagnostics"] = diagnostics(ns)
    at_one = job.z == "one"
    verify = job.verify or job.mode == "verify"
    with mpmath.workprec(job.precision + numeval.GUARD):
        if at_one:
            e = decompose_at_one(s, AtOneConfig())
            doc["result"] = {"kind": "mzv", **mzv_document(e)}
            if job.emit_certificate:
                doc["certificate"] = _atone_certificate(ns, e)
            if verify:
                rhs = numeval.mzvexpr_numeric(e, job.precision)
                lhs, err = numeval.series_numeric(s, None, job.cutoff, job.precision)
                tol = 1e-8
                doc["verification"] = _verdict(lhs, rhs, tol, err)
        else:
            from .generic import decompose_generic

            d = decompose_generic(s)
            doc["result"] = {"kind": "polylog", **decomposition_document(d)}
            if job.emit_certificate:
                doc["certificate"] = {"bricks": _generic_certificate(ns)}
            if verify:
                zv = _zvals(job, s)
                rhs = numeval.decomposition_numeric(d, zv, job.precision)
                lhs, err = numeval.series_numeric(s, zv, job.cutoff, job.precision)
                doc["verification"] = _verdict(lhs, rhs, 1e-20, err)
                doc["verification"]["z"] = [rat_text(x) for x in zv]
    if prefactor is not None and "verification" in doc:
        doc["verification"]["note"] = "values exclude the prefactor"
    return doc


def _verdict(lhs, rhs, tol: float, err) -> Dict[str, Any]:
    import mpmath

    diff = abs(lhs - rhs)
    return {"lhs": mpmath.nstr(lhs, 30), "rhs": mpmath.nstr(rhs, 30), "absdiff": mpmath.nstr(diff, 5),
            "tail_estimate": mpmath.nstr(err, 5), "tolerance": tol, "pass": bool(diff <= tol)}


def render_text(doc: Dict[str, Any]) -> str:
    lines = []
    diag = doc.get("diagnostics")
    if diag:
        for row in diag["D_table"]:
            lines.append(f"j={row['j']}  D_j={row['D_j']}  sum deg={row['degree_sum']}  "
                         f"convergent={row['convergent']}")
    if "prefactor" in doc:
        lines.append(f"prefactor: {doc['prefactor']['coeff']} * z^{doc['prefactor']['zpow']}")
    res = doc.get("result")
    if res and res["kind"] == "mzv":
        parts = [res["constant"]] + [f"{t['coeff']}*zeta({','.join(map(str, t['zeta']))})" for t in res["terms"]]
        lines.append("value = " + " + ".join(parts))
    elif res:
        for t in res["terms"]:
            coeff = " + ".join(f"{c}*z^{e}" for e, c in t["coeff"])
            lines.append(f"({coeff}) * La{t['s']}{t['args']}")
    if "certificate" in doc:
        lines.append("certificate: " + json.dumps(doc["certificate"], sort_keys=True))
    if "verification" in doc:
        v = doc["verification"]
        lines.append(f"verify: lhs={v['lhs']} rhs={v['rhs']} |diff|={v['absdiff']} pass={v['pass']}")
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    return "\n".join(lines)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyzeta", description="Decompose multiple hypergeometric series "
                                 "into multiple polylogarithms or multiple zeta values.")
    ap.add_argument("job", nargs="?", help="JobSpec JSON file ('-' for stdin)")
    mode = ap.add_mutually_exclusive_group()
    mode.add_argument("--at-one", action="store_true", help="decompose at z = 1 into MZVs")
    mode.add_argument("--generic-z", action="store_true", help="decompose at symbolic z into polylogarithms")
    mode.add_argument("--from-integral", action="store_true", help="start from a Sorokin-type integral")
    ap.add_argument("--verify", action="store_true", help="check the identity numerically")
    ap.add_argument("--precision", type=int, help="working precision in bits")
    ap.add_argument("--cutoff", type=int, help="summation cutoff for the series side")
    ap.add_argument("--certificate", action="store_true", help="emit denominator/degree certificates")
    ap.add_argument("--json", action="store_true", help="emit the structured JSON document")
    ap.add_argument("--P", help="numerator in k1..kp")
    ap.add_argument("--A", type=int, nargs="+")
    ap.add_argument("--n", type=int, nargs="+")
    ap.add_argument("--r", type=int, nargs="+")
    ap.add_argument("--z", nargs="+", help="'one', 'symbolic' or rational values")
    ap.add_argument("--integral", help="integral as JSON, e.g. '{\"D\":3,\"p\":2,...}'")
    return ap


def _job_from_args(ns) -> JobSpec:
    d: Dict[str, Any] = {}
    if ns.job:
        text = sys.stdin.read() if ns.job == "-" else open(ns.job).read()
        d = json.loads(text)
    if ns.P is not None:
        if not ns.A:
            raise ValueError("--P needs --A")
        d["series"] = {"P": ns.P, "A": ns.A, "n": ns.n or [0] * len(ns.A or []), "r": ns.r}
    if ns.integral:
        d["integral"] = json.loads(ns.integral)
    if ns.z:
        d["z"] = ns.z[0] if len(ns.z) == 1 and ns.z[0] in ("one", "symbolic") else ns.z
    if ns.at_one:
        d["mode"], d["z"] = "decompose-at-one", "one"
    elif ns.generic_z:
        d["mode"] = "decompose-generic-z"
        if d.get("z", "one") == "one":
            d["z"] = "symbolic"
    elif ns.from_integral:
        d["mode"] = "from-integral"
    if ns.verify:
        d["verify"] = True
    if ns.precision:
        d["precision"] = ns.precision
    if ns.cutoff:
        d["cutoff"] = ns.cutoff
    if ns.certificate:
        d["emit_certificate"] = True
    return JobSpec.from_dict(d)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = _parser().parse_args(argv)
    try:
        job = _job_from_args(ns)
    except (ValueError, KeyError, TypeError, ParseError, OSError) as exc:
        print(f"polyzeta: invalid job: {exc}", file=sys.stderr)
        return 1
    try:
        doc = run(job)
        code = 3 if "verification" in doc and not doc["verification"]["pass"] else 0
    except DivergentSeriesError as exc:
        doc = {"input": job.to_dict(), "error": str(exc),
               "violations": [{"j": j, "degree_sum": int(d), "D_j": D} for j, d, D in exc.violations]}
        code = 2
    print(json.dumps(doc, sort_keys=True, indent=1) if ns.json else render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
