"""Report payloads shared by the CLI: JSON-ready dicts and CSV text.

Rationals are written as ``"num/den"`` strings so nothing is rounded.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import arrangement as arr
from .census import census, census_report, pair_counts
from .conformal import lift_all_c
from .exact import Point, validate_hypothesis
from .keys import KeyKind
from .motion import lift_all
from .oracle import census_equivalence_check, enumerate_motions, enumerate_similitudes


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _rat(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _hist(h: dict) -> dict:
    return {str(k): c for k, c in h.items()}


def arrangement_summary(
    P: Sequence[Point],
    lift: str = "motion",
    *,
    reflections: bool = False,
    include_identity_lines: bool = True,
    regime: str | None = None,
    workers: int = 1,
    coplanarity: bool = False,
) -> tuple[dict, list[arr.EnvelopeRow], bool]:
    """Rich-point histogram, dyadic buckets, audits and envelope table.

    Returns the JSON payload, the envelope rows and whether all audits passed.
    """
    N = len(P)
    if lift == "motion":
        lines = lift_all(P, include_identity_lines)
        regime = regime or arr.GK
    elif lift == "conformal":
        lines = lift_all_c(P, reflections)
        regime = regime or arr.ST
    else:
        raise ValueError(f"unknown lift {lift!r}")
    h = arr.rich_points(lines, workers=workers)
    buckets = arr.dyadic_buckets(h, 3)
    rows = arr.bound_diagnostics(h, N, regime)
    conc = arr.concurrency_audit(h, N)
    audits = {"concurrency": {"ok": conc.ok, "limit": N, "max_multiplicity": conc.max_multiplicity}}
    ok = conc.ok and buckets.dominates
    if lift == "conformal":
        az = arr.a_zero_audit(h, P, N)
        audits["a_zero"] = {"ok": az.ok, "expected": N, "points": len(h.a_zero_points)}
        ok = ok and az.ok
    if coplanarity and lift == "motion":
        cop = arr.coplanarity_audit(lines, N)
        audits["coplanarity"] = {"ok": cop.ok, "limit": N, "max_lines_in_plane": cop.max_multiplicity}
        ok = ok and cop.ok
    payload = {
        "lift": lift,
        "n_points": N,
        "n_lines": h.n_lines,
        "reflections": reflections if lift == "conformal" else False,
        "include_identity_lines": include_identity_lines if lift == "motion" else True,
        "regime": regime,
        "finite": _hist(h.finite),
        "translations": _hist(h.translations),
        "identity_lines": h.identity,
        "a_zero": _hist(h.a_zero),
        "triple_count": arr.triple_count(h),
        "identity_triples": arr.triple_count({h.identity: 1}) if h.identity else 0,
        "dyadic": {
            "threshold": buckets.threshold,
            "buckets": {str(j): c for j, c in buckets.buckets.items()},
            "majorant": buckets.majorant,
            "dominates": buckets.dominates,
        },
        "audits": audits,
        "envelope": [
            {"k": r.k, "count_exact": r.count_exact, "count_at_least": r.count_at_least, "ratio": _rat(r.envelope_ratio)}
            for r in rows
        ],
    }
    return payload, rows, ok


def lift_equivalence(P: Sequence[Point], workers: int = 1) -> dict:
    """Oracle triple sums against arrangement triple counts, plus audits."""
    N = len(P)
    motions = enumerate_motions(P)
    h_m = arr.rich_points(lift_all(P), workers=workers)
    sims = enumerate_similitudes(P)
    h_c = arr.rich_points(lift_all_c(P), workers=workers)
    m_oracle, m_lift = motions.triple_sum(), arr.triple_count(h_m)
    s_oracle, s_lift = sims.triple_sum(), arr.triple_count(h_c)
    conc_m = arr.concurrency_audit(h_m, N)
    conc_c = arr.concurrency_audit(h_c, N)
    az = arr.a_zero_audit(h_c, P, N)
    return {
        "motion": {"oracle": m_oracle, "arrangement": m_lift, "ok": m_oracle == m_lift},
        "similitude": {"oracle": s_oracle, "arrangement": s_lift, "ok": s_oracle == s_lift},
        "concurrency_motion": conc_m.ok,
        "concurrency_conformal": conc_c.ok,
        "a_zero": az.ok,
        "identity_lines": h_m.identity,
    }


def oracle_check(P: Sequence[Point], *, include_degenerate: bool = False, cap: int = 10, lifts: bool = True) -> tuple[dict, bool]:
    verdicts = [census_equivalence_check(P, kind, include_degenerate=include_degenerate, cap=cap) for kind in KeyKind]
    payload = {"n_points": len(P), "equivalence": [v.to_json() for v in verdicts]}
    ok = all(verdicts)
    if lifts:
        lq = lift_equivalence(P)
        payload["lifts"] = lq
        ok = ok and all(
            [lq["motion"]["ok"], lq["similitude"]["ok"], lq["concurrency_motion"], lq["concurrency_conformal"], lq["a_zero"]]
        )
    payload["ok"] = ok
    return payload, ok


SWEEP_FIELDS = [
    "m",
    "n_points",
    "n_triangles",
    "n_classes",
    "Q",
    "cs_lower_bound",
    "classes_over_n_sq",
    "classes_log_n_over_n_sq",
    "classes_over_triangles",
]


def sweep_rows(grids: Iterable[tuple[int, Sequence[Point]]], kind: KeyKind, workers: int = 1) -> list[dict]:
    rows = []
    for m, P in grids:
        c = census(P, kind, workers=workers)
        N = len(P)
        pc = pair_counts(c)
        rows.append(
            {
                "m": m,
                "n_points": N,
                "n_triangles": c.n_triangles,
                "n_classes": c.n_classes,
                "Q": pc.Q,
                "cs_lower_bound": _rat(Fraction(c.n_triangles**2, pc.sum_m_sq)),
                "classes_over_n_sq": c.n_classes / N**2,
                "classes_log_n_over_n_sq": c.n_classes * math.log(N) / N**2,
                "classes_over_triangles": c.n_classes / c.n_triangles,
            }
        )
    return rows


def to_csv(rows: Sequence[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def census_payload(P: Sequence[Point], kind: KeyKind, *, workers: int = 1, include_degenerate: bool = False, strict: bool = False) -> dict:
    return census_report(census(P, kind, workers=workers, include_degenerate=include_degenerate, strict=strict))


def hypothesis_payload(P: Sequence[Point]) -> dict:
    h = validate_hypothesis(P)
    return {"ok": h.ok, "n_points": h.n_points, "max_collinear": h.max_collinear, "witness": list(h.witness)}

