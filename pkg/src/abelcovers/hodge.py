"""Character decomposition of holomorphic 1-forms and the noncompact factors it induces.

For a character chi of G the multiplicity of chi on H^0(C, K_C) is

    m_chi = -1 + sum_i <chi(theta_i)>

where <.> is the fractional part in [0, 1) and chi is nontrivial.  Each
real class {chi, conj(chi)} contributes U(m_chi, m_conj) when chi is not
self-conjugate and Sp(2 m_chi, R) when it is.  Only the noncompact ones
carry a symmetric space.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InternalNonIntegerMultiplicity, MultiplicityInvariantBroken
from .groups import AbelianGroup, Character, Element, characters, tables
from .monodromy import MonodromyDatum, ValidatedDatum, genus as datum_genus

STRICT = "strict"
LOOSE = "loose"
EQUALITY_MODES = (STRICT, LOOSE)


@dataclass(frozen=True)
class EigenspaceProfile:
    """Multiplicities m_chi indexed by character code (same order as :func:`characters`)."""

    group: AbelianGroup
    mult: tuple[int, ...]
    genus: int

    def __getitem__(self, chi: Character | Element) -> int:
        exps = chi.exponents if isinstance(chi, Character) else self.group.element(chi)
        return self.mult[self.group.code(exps)]

    def items(self) -> Iterator[tuple[Character, int]]:
        return zip(characters(self.group), self.mult)

    def conj_code(self, code: int) -> int:
        return int(tables(self.group).neg[code])

    def to_json(self) -> list[dict]:
        return [{"char": list(chi.exponents), "m": m} for chi, m in self.items()]


def eigenspace_multiplicities(datum: MonodromyDatum) -> EigenspaceProfile:
    G = datum.group
    t = tables(G)
    e = G.exponent
    sums = t.pairing[:, np.asarray(datum.codes())].sum(axis=1)
    if (sums[1:] % e).any():
        bad = int(np.flatnonzero(sums % e)[0])
        raise InternalNonIntegerMultiplicity(
            f"m at {list(G.decode(bad))} is {sums[bad]}/{e} - 1 for {datum}"
        )
    mult = sums // e - 1
    mult[0] = 0
    g = datum.genus if isinstance(datum, ValidatedDatum) else datum_genus(datum)
    if (mult < 0).any() or int(mult.sum()) != g:
        raise MultiplicityInvariantBroken(
            f"multiplicities {mult.tolist()} do not sum to genus {g} for {datum}"
        )
    return EigenspaceProfile(G, tuple(int(m) for m in mult), g)


# -- factor labels ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FactorLabel:
    """A noncompact simple factor: SU(p, q) from a conjugate pair, or Sp(2m, R).

    Sp(2, R) and SU(1, 1) are the same group and compare equal; Sp(2m, R)
    for m >= 2 is distinct from every SU(p, q).
    """

    kind: str  # "su" or "sp"
    p: int
    q: int

    @classmethod
    def complex_pair(cls, a: int, b: int) -> FactorLabel:
        return cls("su", min(a, b), max(a, b))

    @classmethod
    def symplectic(cls, m: int) -> FactorLabel:
        return cls("sp", m, m)

    def iso_key(self, mode: str = STRICT) -> tuple[str, int, int]:
        if self.kind == "sp" and (self.p == 1 or mode == LOOSE):
            return ("su", self.p, self.p)
        return (self.kind, self.p, self.q)

    def __eq__(self, other):
        if not isinstance(other, FactorLabel):
            return NotImplemented
        return self.iso_key() == other.iso_key()

    def __hash__(self):
        return hash(self.iso_key())

    @property
    def delta(self) -> int:
        return delta(self)

    def __str__(self):
        if self.iso_key()[0] == "su":
            return f"SU({self.p},{self.q})"
        return f"Sp{2 * self.p}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "q": self.q}


def delta(label: FactorLabel) -> int:
    """Dimension of the symmetric space of the factor."""
    if label.kind == "sp":
        return label.p * (label.p + 1) // 2
    return label.p * label.q


@dataclass(frozen=True, eq=False)
class FactorMultiset:
    """Noncompact factors in character order, with the character each came from."""

    labels: tuple[FactorLabel, ...] = ()
    sources: tuple[Element, ...] = ()

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def counts(self, mode: str = STRICT) -> Counter:
        return Counter(label.iso_key(mode) for label in self.labels)

    def __eq__(self, other):
        if not isinstance(other, FactorMultiset):
            return NotImplemented
        return self.counts() == other.counts()

    def __hash__(self):
        return hash(frozenset(self.counts().items()))

    def summary(self) -> str:
        return "+".join(str(label) for label in self.labels)

    def to_json(self) -> list[dict]:
        return [label.to_json() for label in self.labels]


def factors(profile: EigenspaceProfile) -> FactorMultiset:
    labels, sources = [], []
    for code, m in enumerate(profile.mult):
        if code == 0:
            continue
        bar = profile.conj_code(code)
        if bar == code:
            if m >= 1:
                labels.append(FactorLabel.symplectic(m))
                sources.append(profile.group.decode(code))
        elif code < bar:
            mbar = profile.mult[bar]
            if m * mbar:
                labels.append(FactorLabel.complex_pair(m, mbar))
                sources.append(profile.group.decode(code))
    return FactorMultiset(tuple(labels), tuple(sources))


def compact_pairs(profile: EigenspaceProfile) -> list[dict]:
    """Conjugate pairs with exactly one side nonzero: U(m, 0) is compact."""
    out = []
    for code, m in enumerate(profile.mult):
        bar = profile.conj_code(code)
        if code < bar:
            mbar = profile.mult[bar]
            if m * mbar == 0 and m + mbar > 0:
                out.append({"char": list(profile.group.decode(code)), "m": m, "m_conj": mbar})
    return out


def dim_SG(fm: FactorMultiset) -> int:
    return sum(delta(label) for label in fm)


def dim_sym_square_invariants(profile: EigenspaceProfile) -> int:
    """dim (S^2 H^0(K))^G straight from the multiplicities.

    An invariant in S^2 pairs the chi-part with the conj(chi)-part, so a
    self-conjugate chi gives S^2 of an m-dimensional space and a pair gives
    an m x m_conj block.
    """
    total = 0
    for code, m in enumerate(profile.mult):
        bar = profile.conj_code(code)
        if bar == code:
            total += m * (m + 1) // 2
        elif code < bar:
            total += m * profile.mult[bar]
    return total


def conjugation_pair_sum(profile: EigenspaceProfile, chi: Character | Element) -> int:
    """m_chi + m_conj(chi)."""
    exps = chi.exponents if isinstance(chi, Character) else profile.group.element(chi)
    code = profile.group.code(exps)
    return profile.mult[code] + profile.mult[profile.conj_code(code)]
