"""JSON and text rendering of analysis reports."""

from __future__ import annotations

import json

from .genus_core import FIELD_NAMES, GenusReport


def report_document(report: GenusReport) -> dict:
    doc = report.to_json()
    doc["identities"] = report.identities()
    doc["ok"] = not report.failed()
    return doc


def dumps(doc: dict) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_text(report: GenusReport) -> str:
    F = report.field
    lines = [f"F_{F.q}  generator g = {F.to_json()['generator']}"]
    for i, rep in enumerate(report.components):
        cd = rep.cd
        lines.append("")
        lines.append(f"component {i}: l={cd.l} n={cd.n} gamma={cd.gamma.to_json()}  [{rep.case}]")
        lines.append("  primes: " + ", ".join(
            f"{P} (alpha={a})" for P, a in zip(cd.primes, cd.alphas)))
        lines.append(
            f"  a={list(cd.a)} b={list(cd.b)} c={list(cd.c)} d={list(cd.d)} "
            f"t={cd.t} m={cd.m} i_0={cd.i0 + 1} delta={cd.delta} |H|={cd.H_order} lambda={cd.lam}"
        )
        for name in FIELD_NAMES:
            gens = ", ".join(str(g) for g in rep.generators[name])
            inf = rep.infinity[name]
            lines.append(
                f"  {name:<4} degree {rep.degree(name):>6}  e_P={rep.ramification[name]} "
                f"e_inf={inf.e_inf} f_inf={inf.f_inf} constants={rep.constants[name]}  {gens}"
            )
        lines.append(f"  constants of K_H+: {rep.constants['KH+']} (via {rep.hplus_route})")
        bad = [k for k, v in rep.identities.items() if not v]
        lines.append("  identities: " + ("all hold" if not bad else "FAILED " + ", ".join(bad)))
    if report.compositum is not None:
        comp = report.compositum
        lines.append("")
        lines.append("compositum: " + ", ".join(
            f"[{name}:k]={comp.degree(name)}" for name in ("K", "E", "geE", "geK")))
        bad = [k for k, v in comp.identities.items() if not v]
        lines.append("  identities: " + ("all hold" if not bad else "FAILED " + ", ".join(bad)))
    return "\n".join(lines) + "\n"
