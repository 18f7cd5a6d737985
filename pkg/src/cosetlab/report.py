"""Per-instance analysis reports and their JSON encoding.

Exact rationals are written as ``[numerator, denominator]`` integer pairs.
Report layout (``schema_version`` 1)::

    instance    id, group, set, seed, elements
    growth      set_card, doubling, tripling, symmetrized_card, triple_cube_card
    stability   max_ladder, cap, witness {a, b}, wn_degree, wn_point, sidon
    dichotomy   two_stable, two_wn, coset_or_empty
    structures  eps, empirical_n, selected, best_ratio, pareto (optional)
    theorem_b   n, cover [{g, H, expr, complexity}] (abelian, optional)
    representation  r, B, C, valid, degrees (optional)
    checks      [{name, passed, values, flag}]
    timings     seconds per stage (only when requested)
"""
from __future__ import annotations

import json
import time
from fractions import Fraction

from .growth import CheckResult, check_14k3, exponent_bound_check, growth_stats, plunnecke_check
from .stability import classify_dichotomy, stability_profile
from .structure import (
    as_fraction,
    largest_coset_intersection,
    theorem_a_search,
    theorem_b_search,
    wn_representation_verify,
)

SCHEMA_VERSION = 1
PLUNNECKE_PAIRS = ((2, 0), (3, 0), (2, 2))


def encode(obj):
    """Convert fractions, sets and dataclass-free containers to JSON values."""
    from .sets import GroupSet

    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, GroupSet):
        return obj.to_list()
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def decode_fraction(pair) -> Fraction:
    num, den = pair
    return Fraction(int(num), int(den))


def dumps(report) -> str:
    return json.dumps(encode(report), indent=2) + "\n"


def _structure_summary(s):
    return {
        "H": s.H,
        "H_order": s.H.card,
        "C": list(s.C),
        "C_prime": list(s.C_prime),
        "cover_size": s.cover_size,
        "symdiff": s.symdiff,
        "ratio_H": s.ratio_H,
        "ratio_A": s.ratio_A,
    }


def check_record(c: CheckResult):
    return {"name": c.name, "passed": c.passed, "values": c.values, "flag": c.flag}


def run_checks(A, names):
    """Evaluate the named sanity checks; abelian-only checks are skipped elsewhere."""
    G = A.group
    out = []
    if "14k3" in names:
        out.append(check_14k3(A))
    if "plunnecke" in names and G.is_abelian:
        out.extend(plunnecke_check(A, k, l) for k, l in PLUNNECKE_PAIRS)
    if "exponent_bound" in names and G.is_abelian:
        out.append(exponent_bound_check(A, G.exponent))
    if "dichotomy" in names:
        d = classify_dichotomy(A, strict=False)
        out.append(CheckResult("dichotomy", d.consistent, {
            "two_stable": d.two_stable, "two_wn": d.two_wn, "coset_or_empty": d.coset_or_empty,
        }))
    return out


DEFAULT_CHECKS = ("14k3", "plunnecke", "exponent_bound", "dichotomy")


def analyze(
    A,
    instance=None,
    max_ladder=6,
    eps=1,
    checks=DEFAULT_CHECKS,
    structure=True,
    theorem_b=True,
    max_complexity=3,
    pareto=True,
    representation=None,
    record_timings=False,
):
    """Build the report dictionary for one set. ``A`` must be non-empty."""
    timings = {}
    clock = time.perf_counter

    t0 = clock()
    g = growth_stats(A)
    timings["growth"] = clock() - t0

    t0 = clock()
    prof = stability_profile(A, cap=max_ladder)
    dich = classify_dichotomy(A, strict=False)
    timings["stability"] = clock() - t0

    report = {
        "schema_version": SCHEMA_VERSION,
        "instance": dict(instance or {}, elements=A.to_list()),
        "growth": {
            "set_card": g.set_card,
            "doubling": g.doubling,
            "tripling": g.tripling,
            "symmetrized_card": g.symmetrized_card,
            "triple_cube_card": g.triple_cube_card,
        },
        "stability": {
            "max_ladder": prof.max_ladder,
            "cap": prof.cap,
            "witness": {"a": list(prof.witness.a), "b": list(prof.witness.b)} if prof.witness else None,
            "wn_degree": prof.wn_degree,
            "wn_point": prof.wn_point,
            "sidon": prof.sidon,
        },
        "dichotomy": {
            "two_stable": dich.two_stable,
            "two_wn": dich.two_wn,
            "coset_or_empty": dich.coset_or_empty,
        },
    }

    if structure:
        t0 = clock()
        res = theorem_a_search(A, eps=eps)
        inter = largest_coset_intersection(A, subgroups=[s.H for s in res.structures])
        by_h = {c.H.bits: c for c in inter}
        sel = res.selected
        block = {
            "eps": res.eps,
            "subgroups_examined": len(res.structures),
            "empirical_n": res.empirical_n,
            "selected": _structure_summary(sel) if sel else None,
            "best_ratio": _structure_summary(res.best_ratio),
        }
        if sel:
            hit = by_h[sel.H.bits]
            block["largest_coset_intersection"] = {"g": hit.g, "size": hit.size}
        if pareto:
            block["pareto"] = [_structure_summary(s) for s in res.pareto]
        report["structures"] = block
        timings["structure"] = clock() - t0

    if theorem_b and A.group.is_abelian:
        t0 = clock()
        tb = theorem_b_search(A, max_complexity=max_complexity)
        report["theorem_b"] = {
            "n": tb.n,
            "cover": [
                {
                    "g": gi,
                    "H": H,
                    "expr": str(e) if e is not None else None,
                    "complexity": e.complexity if e is not None else None,
                }
                for (gi, H), e in zip(tb.cover, tb.expressions)
            ],
        }
        timings["theorem_b"] = clock() - t0

    if representation is not None:
        r, B_list, C_list = representation
        cert = wn_representation_verify(A, r, B_list, C_list)
        report["representation"] = {
            "r": cert.r,
            "B": list(cert.B_list),
            "C": list(cert.C_list),
            "denotes_A": cert.denotes_A,
            "valid": cert.valid,
            "degrees": list(cert.degrees),
        }

    report["checks"] = [check_record(c) for c in run_checks(A, checks)]
    if record_timings:
        report["timings"] = timings
    return report


__all__ = ["SCHEMA_VERSION", "analyze", "as_fraction", "decode_fraction", "dumps", "encode", "run_checks"]
