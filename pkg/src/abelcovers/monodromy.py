"""Monodromy data of abelian covers of the projective line.

A datum is a group G together with branch elements theta_1..theta_s.  Two
data describe the same family when they differ by a permutation of the
branch points and an automorphism of G; with the lexicographic order on
residue vectors the least element of such an orbit is the sorted tuple
minimised over Aut(G), which is what ``canonical_form`` returns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

import numpy as np

from .errors import (
    GenusBelowTwo,
    IdentityBranchElement,
    MalformedDatum,
    MonodromySumNonzero,
    NotGenerating,
    TooFewBranchPoints,
)
from .groups import (
    AbelianGroup,
    Element,
    automorphism_table,
    element_order,
    quotient_rank,
    subgroup_closure,
    tables,
)


@dataclass(frozen=True)
class MonodromyDatum:
    group: AbelianGroup
    theta: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(self.group.element(x) for x in self.theta))

    @property
    def s(self) -> int:
        return len(self.theta)

    def codes(self) -> tuple[int, ...]:
        return tuple(self.group.code(x) for x in self.theta)

    def to_json(self) -> dict[str, Any]:
        return {"group": list(self.group.cyclic_orders), "theta": [list(x) for x in self.theta]}

    def __str__(self):
        return f"G={self.group} theta={[list(x) for x in self.theta]}"


@dataclass(frozen=True)
class ValidatedDatum(MonodromyDatum):
    """A datum known to satisfy every invariant; build it with :func:`validate`."""

    genus: int = 0
    local_orders: tuple[int, ...] = ()


def datum_from_json(obj: Any) -> MonodromyDatum:
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedDatum(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "group" not in obj or "theta" not in obj:
        raise MalformedDatum('expected an object with keys "group" and "theta"')
    group, theta = obj["group"], obj["theta"]
    if not isinstance(group, list) or not all(isinstance(n, int) for n in group):
        raise MalformedDatum('"group" must be a list of integers')
    if not isinstance(theta, list) or not all(
        isinstance(x, list) and all(isinstance(v, int) for v in x) for x in theta
    ):
        raise MalformedDatum('"theta" must be a list of integer vectors')
    return MonodromyDatum(AbelianGroup(tuple(group)), tuple(tuple(x) for x in theta))


def local_orders(datum: MonodromyDatum) -> tuple[int, ...]:
    return tuple(element_order(datum.group, x) for x in datum.theta)


def genus(datum: MonodromyDatum) -> int:
    """Riemann-Hurwitz over the line: 2g - 2 = -2|G| + sum (|G|/m_i)(m_i - 1)."""
    n = datum.group.order
    twice = 2 - 2 * n + sum(n // m * (m - 1) for m in local_orders(datum))
    assert twice % 2 == 0, "Riemann-Hurwitz produced an odd Euler characteristic"
    return twice // 2


def dim_family(datum: MonodromyDatum) -> int:
    return datum.s - 3


def validate(datum: MonodromyDatum, *, min_genus: int = 2) -> ValidatedDatum:
    """Check the datum invariants in a fixed order and attach genus and local orders.

    ``min_genus`` defaults to 2; lowering it admits the genus-1 data
    (four branch points, all of order 2) for enumeration experiments.
    """
    G = datum.group
    for i, x in enumerate(datum.theta):
        if x == G.identity:
            raise IdentityBranchElement(f"theta_{i + 1} is the identity")
    total = G.sum(datum.theta)
    if total != G.identity:
        raise MonodromySumNonzero(f"sum of theta is {list(total)}, not 0")
    if len(subgroup_closure(G, datum.codes())) != G.order:
        raise NotGenerating(f"theta does not generate {G}")
    if datum.s < 4:
        raise TooFewBranchPoints(f"s = {datum.s} < 4 gives no positive-dimensional family")
    g = genus(datum)
    if g < min_genus:
        raise GenusBelowTwo(f"genus {g} < {min_genus}")
    return ValidatedDatum(G, datum.theta, genus=g, local_orders=local_orders(datum))


def _validated(group: AbelianGroup, codes: Sequence[int]) -> ValidatedDatum:
    theta = tuple(group.decode(c) for c in codes)
    d = MonodromyDatum(group, theta)
    return ValidatedDatum(group, theta, genus=genus(d), local_orders=local_orders(d))


# -- canonical forms -------------------------------------------------------


def _beaten(auts: np.ndarray, prefix: Sequence[int]) -> bool:
    """True if some automorphism maps the multiset ``prefix`` to a lex-smaller sorted tuple."""
    p = np.asarray(prefix)
    img = np.sort(auts[:, p], axis=1)
    diff = img - p
    first = (diff != 0).argmax(axis=1)
    return bool((diff[np.arange(len(diff)), first] < 0).any())


def canonical_codes(group: AbelianGroup, codes: Sequence[int]) -> tuple[int, ...]:
    auts = automorphism_table(group)
    img = np.sort(auts[:, np.asarray(codes)], axis=1)
    order = np.lexsort(img.T[::-1])
    return tuple(int(c) for c in img[order[0]])


def canonical_form(datum: ValidatedDatum) -> ValidatedDatum:
    """Least datum in the orbit under branch permutations times Aut(G)."""
    codes = canonical_codes(datum.group, datum.codes())
    return _validated(datum.group, codes)


def is_canonical(datum: MonodromyDatum) -> bool:
    codes = datum.codes()
    return list(codes) == sorted(codes) and not _beaten(automorphism_table(datum.group), codes)


# -- enumeration -----------------------------------------------------------


def enumerate_data(group: AbelianGroup, s: int, *, min_genus: int = 2) -> Iterator[ValidatedDatum]:
    """One canonical representative per equivalence class of valid data with s branch points.

    Yields in increasing lexicographic order of the sorted code tuple.
    Branches are cut when the remaining slots cannot make the tuple sum to
    zero and generate G, or when an automorphism already beats the prefix:
    if sorted(a(P)) < P for the prefix P, the same a beats every extension.
    """
    if s < 4:
        raise TooFewBranchPoints(f"s = {s} < 4 gives no positive-dimensional family")
    auts = automorphism_table(group)
    t = tables(group)
    add, neg = t.add, t.neg
    n = group.order
    everything = frozenset(range(n))
    prefix: list[int] = []

    def rec(last: int, total: int, sub: frozenset[int]) -> Iterator[tuple[int, ...]]:
        left = s - len(prefix)
        if left == 1:
            need = int(neg[total])
            if need == 0 or need < last:
                return
            if subgroup_closure(group, [need], sub) != everything:
                return
            prefix.append(need)
            if not _beaten(auts, prefix):
                yield tuple(prefix)
            prefix.pop()
            return
        # the last slot is forced by the sum, so left - 1 free generators remain
        if quotient_rank(group, sub) > left - 1:
            return
        for x in range(max(last, 1), n):
            prefix.append(x)
            if not _beaten(auts, prefix):
                yield from rec(x, int(add[total, x]), subgroup_closure(group, [x], sub))
            prefix.pop()

    for codes in rec(1, 0, frozenset([0])):
        d = _validated(group, codes)
        if d.genus >= min_genus:
            yield d
