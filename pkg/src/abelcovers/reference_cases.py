"""The four published worked examples, with every value they state.

Generators are written g1, g2, g3 for the standard basis of (Z/2)^k, and
the character chi_g is the one whose exponent vector is g.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classifier import ClassificationReport, classify, possible_sf_dims
from .groups import make_group
from .hodge import EigenspaceProfile, FactorLabel, eigenspace_multiplicities
from .monodromy import MonodromyDatum, ValidatedDatum, validate

g1, g2, g3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
h1, h2 = (1, 0), (0, 1)


def _add(*xs):
    return tuple(sum(c) % 2 for c in zip(*xs))


@dataclass(frozen=True)
class ReferenceCase:
    name: str
    group: tuple[int, ...]
    theta: tuple[tuple[int, ...], ...]
    expected: dict = field(default_factory=dict)

    def datum(self) -> ValidatedDatum:
        return validate(MonodromyDatum(make_group(self.group), self.theta))


REFERENCE_CASES: tuple[ReferenceCase, ...] = (
    ReferenceCase(
        "example-1",
        (6,),
        ((3,), (3,), (3,), (4,), (5,)),
        {
            "s": 5,
            "genus": 4,
            "local_orders": [2, 2, 2, 3, 6],
            "multiplicities": {(1,): 2, (5,): 1, (2,): 0, (4,): 0, (3,): 1},
            "monodromy": {(1,): "SU(1,2)", (2,): "{1}", (3,): "SU(1,1)"},
            "dim_Z": 2,
            "dim_SG": 3,
            "distinct_factors": True,
            "verdict": "NOT_SPECIAL",
            "sf_vs_sg": "EQUAL",
            "rule": "R2:distinct-factors",
        },
    ),
    ReferenceCase(
        "example-2",
        (2, 2, 2),
        (g2, g2, g2, _add(g1, g2), _add(g1, g2, g3), _add(g2, g3)),
        {
            "s": 6,
            "genus": 5,
            "local_orders": [2] * 6,
            "multiplicities": {
                g1: 0, g2: 2, g3: 0, _add(g1, g2): 1,
                _add(g1, g3): 0, _add(g2, g3): 1, _add(g1, g2, g3): 1,
            },
            "monodromy": {
                g1: "{1}", g2: "Sp4", g3: "{1}", _add(g1, g2): "SU(1,1)",
                _add(g1, g3): "{1}", _add(g2, g3): "SU(1,1)", _add(g1, g2, g3): "SU(1,1)",
            },
            "dim_Z": 3,
            "sf_lower_bound": 4,
            "feasible_sf_dims": [4, 5, 6],
            "verdict": "NOT_SPECIAL",
            "sf_vs_sg": "UNKNOWN",
            "rule": "R3:dimension-exclusion",
        },
    ),
    ReferenceCase(
        "example-3",
        (2, 2),
        (h2, h1, h1, h1, _add(h1, h2), h1, h1),
        {
            "s": 7,
            "genus": 4,
            "local_orders": [2] * 7,
            "multiplicities": {h1: 2, h2: 0, _add(h1, h2): 2},
            "monodromy": {h1: "Sp4", h2: "{1}", _add(h1, h2): "Sp4"},
            "dim_Z": 4,
            "distinct_factors": False,
            "all_sf_dims": [3, 6],
            "feasible_sf_dims": [6],
            "verdict": "NOT_SPECIAL",
            "sf_vs_sg": "EQUAL",
            "rule": "R3:dimension-exclusion",
        },
    ),
    ReferenceCase(
        "example-4",
        (2, 2),
        (h2, h1, h2, h1, _add(h1, h2), h1, h2),
        {
            "s": 7,
            "genus": 4,
            "local_orders": [2] * 7,
            "multiplicities": {h1: 1, h2: 1, _add(h1, h2): 2},
            "monodromy": {h1: "SU(1,1)", h2: "SU(1,1)", _add(h1, h2): "Sp4"},
            "dim_Z": 4,
            "feasible_sf_dims": [4, 5],
            "verdict": "INCONCLUSIVE",
            "rule": "R5:fallthrough",
            "glued_class_at_dim_Z": "SU(1,1)",
        },
    ),
)


def monodromy_label(profile: EigenspaceProfile, chi: tuple[int, ...]) -> str:
    """Name of the factor attached to chi, or "{1}" when it is compact or trivial."""
    code = profile.group.code(profile.group.element(chi))
    m, mbar = profile.mult[code], profile.mult[profile.conj_code(code)]
    if m * mbar == 0:
        return "{1}"
    if profile.conj_code(code) == code:
        return str(FactorLabel.symplectic(m))
    return str(FactorLabel.complex_pair(m, mbar))


def observed(case: ReferenceCase, report: ClassificationReport) -> dict:
    d = report.datum
    profile = eigenspace_multiplicities(d)
    exp = case.expected
    got = {
        "s": d.s,
        "genus": d.genus,
        "local_orders": list(d.local_orders),
        "multiplicities": {chi: profile[chi] for chi in exp["multiplicities"]},
        "monodromy": {chi: monodromy_label(profile, chi) for chi in exp["monodromy"]},
        "dim_Z": report.dim_Z,
        "dim_SG": report.dim_SG,
        "distinct_factors": all(c == 1 for c in report.factor_multiset.counts().values()),
        "sf_lower_bound": report.sf_dims.lower_bound,
        "all_sf_dims": sorted(report.sf_dims.all),
        "feasible_sf_dims": sorted(report.sf_dims.feasible),
        "verdict": report.verdict.value,
        "sf_vs_sg": report.sf_vs_sg.value,
        "rule": report.rule,
    }
    if "glued_class_at_dim_Z" in exp:
        dims = possible_sf_dims(report.factor_multiset, report.dim_Z)
        names = sorted({f for w in dims.witnesses.get(report.dim_Z, []) for f, _, _ in w})
        got["glued_class_at_dim_Z"] = ",".join(names)
    return {k: got[k] for k in exp}


def verify_reference_cases() -> list[tuple[str, dict]]:
    """Return (name, mismatches) per case; mismatches maps key -> (expected, got)."""
    results = []
    for case in REFERENCE_CASES:
        got = observed(case, classify(case.datum()))
        diff = {k: (v, got[k]) for k, v in case.expected.items() if got[k] != v}
        results.append((case.name, diff))
    return results
