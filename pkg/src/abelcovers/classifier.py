"""Decide whether the locus Z of a family is special.

We always have Z in S_f in S(G), where S_f is the smallest special
subvariety through Z, and Z is special iff Z = S_f.  The rules below use
only dimensions: dim Z = s - 3, dim S(G) = sum of deltas of the
noncompact factors, and the dimensions S_f can take when equal factors
are glued along isometry graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable

from .errors import InvalidAssertion
from .hodge import (
    STRICT,
    FactorLabel,
    FactorMultiset,
    compact_pairs,
    dim_SG,
    dim_sym_square_invariants,
    eigenspace_multiplicities,
    factors,
)
from .monodromy import ValidatedDatum, dim_family

TOTALLY_DECOMPOSABLE = "totally_decomposable"
KNOWN_ASSERTIONS = frozenset({TOTALLY_DECOMPOSABLE})

SU11 = FactorLabel.complex_pair(1, 1)


class Verdict(str, Enum):
    SPECIAL = "SPECIAL"
    NOT_SPECIAL = "NOT_SPECIAL"
    INCONCLUSIVE = "INCONCLUSIVE"


class SfVsSG(str, Enum):
    EQUAL = "EQUAL"
    STRICTLY_SMALLER_POSSIBLE = "STRICTLY_SMALLER_POSSIBLE"
    UNKNOWN = "UNKNOWN"


R1 = "R1:star"
R2 = "R2:distinct-factors"
R3 = "R3:dimension-exclusion"
R4 = "R4:totally-decomposable"
R5 = "R5:fallthrough"


@dataclass(frozen=True)
class FactorClass:
    label: FactorLabel
    count: int

    @property
    def delta(self) -> int:
        return self.label.delta


@dataclass(frozen=True)
class SfDimensions:
    """Candidate values of dim S_f.

    ``witnesses[d]`` lists the gluings realising d: each is a tuple of
    (class label, copies, blocks) for the classes with fewer blocks than copies.
    """

    all: frozenset[int]
    feasible: frozenset[int]
    witnesses: dict[int, list[tuple[tuple[str, int, int], ...]]] = field(default_factory=dict)

    @property
    def lower_bound(self) -> int | None:
        return min(self.feasible) if self.feasible else None


def factor_classes(fm: FactorMultiset) -> list[FactorClass]:
    """Isomorphism classes of labels, in order of first appearance."""
    seen: dict[FactorLabel, int] = {}
    for label in fm:
        seen[label] = seen.get(label, 0) + 1
    return [FactorClass(label, k) for label, k in seen.items()]


def star_condition(datum: ValidatedDatum) -> bool:
    return dim_family(datum) == dim_SG(factors(eigenspace_multiplicities(datum)))


def tutti_diversi(fm: FactorMultiset, mode: str = STRICT) -> bool:
    """True when no two noncompact factors are isomorphic."""
    return all(k == 1 for k in fm.counts(mode).values())


def possible_sf_dims(fm: FactorMultiset, dim_Z: int) -> SfDimensions:
    """Every sum of b_c * delta_c with 1 <= b_c <= k_c over the label classes.

    A class of k isomorphic factors can be glued into any number b of blocks
    between 1 (all identified diagonally) and k (no gluing); factors that are
    not isomorphic are never glued.
    """
    classes = factor_classes(fm)
    witnesses: dict[int, list] = {}
    for blocks in product(*(range(1, c.count + 1) for c in classes)):
        d = sum(b * c.delta for b, c in zip(blocks, classes))
        glued = tuple((str(c.label), c.count, b) for b, c in zip(blocks, classes) if b < c.count)
        witnesses.setdefault(d, []).append(glued)
    every = frozenset(witnesses)
    feasible = frozenset(d for d in every if d >= dim_Z)
    return SfDimensions(every, feasible, {d: witnesses[d] for d in sorted(every)})


def decomposable_structure_check(fm: FactorMultiset) -> bool:
    """Every noncompact factor is SU(1,1), the only shape a special
    totally decomposable family can have."""
    return all(label == SU11 for label in fm)


def expected_special_dim_decomposable(moving_factors: int, cm_factors: int) -> int:
    """Dimension of the orbit (upper half plane)^r x (CM points) uniformising such a family."""
    if moving_factors < 0 or cm_factors < 0:
        raise ValueError("factor counts must be nonnegative")
    return moving_factors


@dataclass(frozen=True)
class ClassificationReport:
    datum: ValidatedDatum
    dim_Z: int
    dim_SG: int
    star_holds: bool
    factor_multiset: FactorMultiset
    sf_dims: SfDimensions
    verdict: Verdict
    sf_vs_sg: SfVsSG
    applied_rules: tuple[str, ...]
    assertions_used: frozenset[str]
    multiplicities: list[dict]
    compact: list[dict]
    dim_sym_square: int
    mode: str = STRICT

    @property
    def rule(self) -> str:
        return self.applied_rules[-1]

    def to_json(self) -> dict:
        out = {
            "dim_Z": self.dim_Z,
            "dim_SG": self.dim_SG,
            "star": self.star_holds,
            "factors": self.factor_multiset.to_json(),
            "possible_sf_dims": {
                "all": sorted(self.sf_dims.all),
                "feasible": sorted(self.sf_dims.feasible),
            },
            "verdict": self.verdict.value,
            "sf_vs_sg": self.sf_vs_sg.value,
            "rules": list(self.applied_rules),
            "assertions": sorted(self.assertions_used),
            "datum": self.datum.to_json(),
            "genus": self.datum.genus,
            "local_orders": list(self.datum.local_orders),
            "multiplicities": self.multiplicities,
            "compact_pairs": self.compact,
            "factor_summary": self.factor_multiset.summary(),
            "equality_mode": self.mode,
        }
        if self.verdict is Verdict.INCONCLUSIVE:
            out["witnesses"] = [
                {
                    "dim": d,
                    "gluings": [
                        [{"factor": f, "copies": k, "blocks": b} for f, k, b in w]
                        for w in self.sf_dims.witnesses[d]
                    ],
                }
                for d in sorted(self.sf_dims.feasible)
            ]
        return out


def classify(
    datum: ValidatedDatum, assertions: Iterable[str] = (), *, mode: str = STRICT
) -> ClassificationReport:
    """Apply R1..R5 in order; the first rule that fires sets the verdict."""
    assertions = frozenset(assertions)
    unknown = assertions - KNOWN_ASSERTIONS
    if unknown:
        raise InvalidAssertion(f"unknown assertions {sorted(unknown)}")

    profile = eigenspace_multiplicities(datum)
    fm = factors(profile)
    dim_z = dim_family(datum)
    dim_sg = dim_SG(fm)
    star = dim_z == dim_sg
    dims = possible_sf_dims(fm, dim_z)

    if TOTALLY_DECOMPOSABLE in assertions and not decomposable_structure_check(fm):
        raise InvalidAssertion(
            f"totally decomposable asserted but the factors {fm.summary()} are not all SU(1,1)"
        )

    rules: list[str] = []

    def report(verdict: Verdict, rel: SfVsSG) -> ClassificationReport:
        return ClassificationReport(
            datum=datum,
            dim_Z=dim_z,
            dim_SG=dim_sg,
            star_holds=star,
            factor_multiset=fm,
            sf_dims=dims,
            verdict=verdict,
            sf_vs_sg=rel,
            applied_rules=tuple(rules),
            assertions_used=assertions,
            multiplicities=profile.to_json(),
            compact=compact_pairs(profile),
            dim_sym_square=dim_sym_square_invariants(profile),
            mode=mode,
        )

    rules.append(R1)
    if star:
        return report(Verdict.SPECIAL, SfVsSG.EQUAL)
    rules.append(R2)
    if tutti_diversi(fm, mode):
        return report(Verdict.NOT_SPECIAL, SfVsSG.EQUAL)
    rules.append(R3)
    if dim_z not in dims.all:
        rel = SfVsSG.EQUAL if dims.feasible == {dim_sg} else SfVsSG.UNKNOWN
        return report(Verdict.NOT_SPECIAL, rel)
    rules.append(R4)
    if TOTALLY_DECOMPOSABLE in assertions:
        return report(Verdict.NOT_SPECIAL, SfVsSG.EQUAL)
    rules.append(R5)
    if dim_z in dims.feasible and dim_z < dim_sg:
        rel = SfVsSG.STRICTLY_SMALLER_POSSIBLE
    else:
        rel = SfVsSG.UNKNOWN
    return report(Verdict.INCONCLUSIVE, rel)
