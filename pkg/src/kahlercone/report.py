"""Deterministic text and CSV rendering of verdicts and experiment runs.

Exact values print as ``p/q``; floats print with 12 significant digits.
Row order follows the declared cycle table or the run order, never a hash.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from ._exact import format_float, format_rational
from .mass.concentration import CSV_COLUMNS


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "yes" if x else "no"
    if isinstance(x, (float, np.floating)):
        return format_float(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    try:
        return format_rational(x)
    except Exception:
        return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) if not isinstance(x, str) else x for x in r])
    return buf.getvalue()


def _table(header, rows) -> str:
    rows = [[x if isinstance(x, str) else fmt(x) for x in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


# ----------------------------------------------------------------------------
# check


VERDICT_COLUMNS = ("cycle", "exponents", "value", "note")


def _exponents(e):
    return "(" + ",".join(str(x) for x in e) + ")" if e else ""


def verdict_rows(verdict):
    return [(w.cycle, _exponents(w.exponents), w.value, w.note) for w in verdict.constraints or verdict.witnesses]


def verdict_text(verdict, banner, extra=()) -> str:
    out = [f"# {banner}", f"test: {verdict.test}", f"answer: {verdict.answer}", f"exact: {fmt(verdict.exact)}"]
    out.extend(extra)
    rows = verdict_rows(verdict)
    if rows:
        out.append(_table(VERDICT_COLUMNS, rows))
    if verdict.witnesses:
        out.append("witnesses: " + ", ".join(f"{w.cycle} = {fmt(w.value)}" for w in verdict.witnesses))
    for key in ("lambda", "separator"):
        if key in verdict.details:
            out.append(f"{key}: [" + ", ".join(fmt(x) for x in verdict.details[key]) + "]")
    if "certificate_exact" in verdict.details:
        out.append(f"certificate exact: {fmt(verdict.details['certificate_exact'])}")
    return "\n".join(out) + "\n"


def verdict_csv(verdict) -> str:
    return _csv(VERDICT_COLUMNS, verdict_rows(verdict))


def component_text(label, verdict, banner) -> str:
    return verdict_text(verdict, banner, [f"component: {label}"])


def trace_text(trace, banner) -> str:
    out = [f"# {banner}", "test: nef-iteration", f"complete: {fmt(trace.complete)}",
           f"delta0: {fmt(trace.delta0)}", f"base scale: {fmt(trace.base_scale)}"]
    rows = [(s.nu, s.scale, s.kahler, "; ".join(f"{k}={fmt(v)}" for k, v in s.values.items())) for s in trace.steps]
    if rows:
        out.append(_table(("nu", "scale", "kahler", "values"), rows))
    if trace.failure is not None:
        w = trace.failure
        out.append(f"failure: {w.cycle} = {fmt(w.value)}; {w.note}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# poly


def poly_text(ident, delta0=None, certs=None, tried=None) -> str:
    out = [f"A_{ident.p}(t,delta) = {ident.to_string()}"]
    if tried:
        out.append("tried: " + ", ".join(f"{fmt(d)} {'ok' if ok else 'fail'}" for d, ok in tried))
    if delta0 is not None:
        out.append(f"delta0 = {fmt(delta0)}")
    for p, cert in sorted((certs or {}).items()):
        keys = [k for k in ("reason", "boxes", "depth", "min_coefficient", "t", "delta", "value") if k in cert]
        out.append(f"  p={p}: " + ", ".join(f"{k}={fmt(cert[k])}" for k in keys))
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# mass


def mass_csv(report) -> str:
    return _csv(CSV_COLUMNS, [r.csv_values() for r in report.rows])


def mass_text(report) -> str:
    out = [
        f"n={report.n} p={report.p} layout={report.layout} resolution={report.resolution} system={report.system}",
        f"A={fmt(report.A)} U_radius={fmt(report.U_radius)} delta_p={fmt(report.delta_p)}",
        _table(CSV_COLUMNS, [r.csv_values() for r in report.rows]),
        f"tube mass floor (>= 50% of coarsest): {'ok' if report.floor_ok else 'FAIL'}",
        f"exceptional set (<= delta (1 + 10h)): {'ok' if report.exceptional_ok else 'FAIL'}",
    ]
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# transport


def transport_header(result, pairings):
    from .transport import describe_coordinate, two_form_basis

    coords = [describe_coordinate(b) for b in two_form_basis(result.path.n)]
    return ["u", *coords, "subbundle_defect", "reality_defect", *[f"pairing_{p.cycle}" for p in pairings], "verdict", "signature"]


def transport_rows(result, pairings, invariance):
    verdicts = {round(r.u, 12): r for r in invariance.rows}
    for i, u in enumerate(result.u):
        v = verdicts.get(round(float(u), 12))
        yield [
            float(u),
            *[float(x) for x in result.states[i].real],
            float(result.subbundle_defect[i]),
            float(result.reality_defect[i]),
            *[float(p.values[i]) for p in pairings],
            v.answer if v else "",
            f"({v.signature[0]},{v.signature[1]})" if v else "",
        ]


def transport_csv(result, pairings, invariance) -> str:
    return _csv(transport_header(result, pairings), transport_rows(result, pairings, invariance))


def transport_text(result, pairings, invariance, banner, drift_tol) -> str:
    out = [
        f"# {banner}",
        f"family: {result.path.name or '(unnamed)'}  n={result.path.n}  steps={result.steps}  closed={fmt(result.path.is_closed)}",
        f"max subbundle defect: {fmt(result.max_subbundle_defect)}",
        f"max reality defect: {fmt(result.max_reality_defect)}",
        f"norm control (L={fmt(result.lipschitz)}): {'ok' if result.norm_controlled else 'FAIL'}",
    ]
    rows = [(p.cycle, p.p, float(p.values[0]), p.drift, "ok" if p.drift <= drift_tol else "FAIL") for p in pairings]
    out.append(_table(("cycle", "p", "pairing(0)", "drift", "status"), rows))
    labels = sorted({r.label for r in invariance.rows})
    out.append(f"verdict along path: {', '.join(labels)} ({'constant' if invariance.constant else 'NOT constant'})")
    return "\n".join(out) + "\n"
