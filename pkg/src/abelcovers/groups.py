"""Finite abelian groups Z/n1 x ... x Z/nk, their characters and automorphisms.

Elements and characters are residue vectors.  Each element also has an
integer code (mixed radix, last coordinate fastest), and the integer order
of codes coincides with the lexicographic order of residue vectors.  The
numeric tables used by the enumeration code work on these codes.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ElementShapeMismatch,
    EmptyGroupSpec,
    GroupTooLargeForAutEnumeration,
    OrderLessThanTwo,
)

Element = tuple[int, ...]

DEFAULT_MAX_GROUP_ORDER = 512
# Aut((Z/2)^5) already has ~10^7 elements; exhaustive tables stop well before.
DEFAULT_MAX_AUTOMORPHISMS = 250_000


def max_group_order() -> int:
    """Bound on |G| for automorphism enumeration (SCANNER_MAX_GROUP_ORDER)."""
    value = os.environ.get("SCANNER_MAX_GROUP_ORDER")
    return int(value) if value else DEFAULT_MAX_GROUP_ORDER


@dataclass(frozen=True)
class AbelianGroup:
    """The group Z/n1 x ... x Z/nk, kept in the presentation it was given."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if not orders:
            raise EmptyGroupSpec("group needs at least one cyclic factor")
        bad = [n for n in orders if n < 2]
        if bad:
            raise OrderLessThanTwo(f"cyclic orders must be >= 2, got {bad}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.cyclic_orders)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def __str__(self):
        return "x".join(str(n) for n in self.cyclic_orders)

    def element(self, x: Iterable[int]) -> Element:
        """Return ``x`` as a reduced element; the shape must match."""
        x = tuple(int(v) for v in x)
        if len(x) != self.rank:
            raise ElementShapeMismatch(
                f"element {list(x)} has {len(x)} coordinates, group {self} has {self.rank}"
            )
        return tuple(v % n for v, n in zip(x, self.cyclic_orders))

    def elements(self) -> list[Element]:
        """All elements in lexicographic order (identity first)."""
        return _elements(self)

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.cyclic_orders))

    def neg(self, x: Element) -> Element:
        return tuple(-a % n for a, n in zip(x, self.cyclic_orders))

    def sum(self, xs: Iterable[Element]) -> Element:
        total = self.identity
        for x in xs:
            total = self.add(total, x)
        return total

    def code(self, x: Element) -> int:
        c = 0
        for a, n in zip(x, self.cyclic_orders):
            c = c * n + a
        return c

    def decode(self, c: int) -> Element:
        return _elements(self)[c]


def make_group(cyclic_orders: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(tuple(cyclic_orders))


@lru_cache(maxsize=None)
def _elements(group: AbelianGroup) -> list[Element]:
    return [tuple(x) for x in product(*(range(n) for n in group.cyclic_orders))]


def element_order(group: AbelianGroup, x: Sequence[int]) -> int:
    x = _check(group, x)
    return math.lcm(*(n // math.gcd(n, a) for a, n in zip(x, group.cyclic_orders)))


def _check(group: AbelianGroup, x: Sequence[int]) -> Element:
    if len(x) != group.rank:
        raise ElementShapeMismatch(
            f"element {list(x)} has {len(x)} coordinates, group {group} has {group.rank}"
        )
    return group.element(x)


# -- numeric tables --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupTables:
    """Integer-coded lookup tables for one group.

    ``pairing[a, x]`` is the numerator of the value of character ``a`` at
    element ``x`` over the common denominator ``group.exponent``.
    """

    coords: np.ndarray  # (|G|, k) residue vectors
    add: np.ndarray  # (|G|, |G|) code of x + y
    neg: np.ndarray  # (|G|,)
    orders: np.ndarray  # (|G|,) element orders
    pairing: np.ndarray  # (|G|, |G|) in [0, exponent)


@lru_cache(maxsize=None)
def tables(group: AbelianGroup) -> GroupTables:
    n = np.array(group.cyclic_orders, dtype=np.int64)
    coords = np.array(group.elements(), dtype=np.int64).reshape(group.order, group.rank)
    strides = _strides(group)
    summed = (coords[:, None, :] + coords[None, :, :]) % n
    add = summed @ strides
    neg = ((-coords) % n) @ strides
    orders = np.array([element_order(group, x) for x in group.elements()], dtype=np.int64)
    e = group.exponent
    scale = e // n
    pairing = ((coords * scale) @ coords.T) % e
    for arr in (coords, add, neg, orders, pairing):
        arr.setflags(write=False)
    return GroupTables(coords, add, neg, orders, pairing)


# -- characters ------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """The character x -> exp(2 pi i * sum(a_i x_i / n_i))."""

    group: AbelianGroup
    exponents: Element

    def __post_init__(self):
        object.__setattr__(self, "exponents", _check(self.group, self.exponents))

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: Character) -> Character:
        if other.group != self.group:
            raise ElementShapeMismatch("characters of different groups")
        return Character(self.group, self.group.add(self.exponents, other.exponents))

    def __call__(self, x: Sequence[int]) -> Fraction:
        return char_fraction(self, x)

    def __str__(self):
        return f"chi{list(self.exponents)}"


def characters(group: AbelianGroup) -> list[Character]:
    """All characters, ordered like the elements; the trivial one comes first."""
    return [Character(group, a) for a in group.elements()]


def char_fraction(chi: Character, x: Sequence[int]) -> Fraction:
    """chi(x) as the exact rational t in [0, 1) with chi(x) = exp(2 pi i t)."""
    x = _check(chi.group, x)
    num = sum(Fraction(a * v, n) for a, v, n in zip(chi.exponents, x, chi.group.cyclic_orders))
    return num - math.floor(num)


def conjugate(chi: Character) -> Character:
    return Character(chi.group, chi.group.neg(chi.exponents))


def is_self_conjugate(chi: Character) -> bool:
    return conjugate(chi) == chi


# -- automorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """An automorphism, given by the images of the standard generators e_i."""

    group: AbelianGroup
    images: tuple[Element, ...]

    def __call__(self, x: Sequence[int]) -> Element:
        x = _check(self.group, x)
        out = self.group.identity
        for a, y in zip(x, self.images):
            out = self.group.add(out, tuple(a * v for v in y))
        return self.group.element(out)

    @property
    def perm(self) -> tuple[int, ...]:
        """Action on element codes."""
        return tuple(int(c) for c in _perm_of(self.group, self.images))


def _perm_of(group: AbelianGroup, images: Sequence[Element]) -> np.ndarray:
    t = tables(group)
    n = np.array(group.cyclic_orders, dtype=np.int64)
    img = np.array(images, dtype=np.int64).reshape(group.rank, group.rank)
    return ((t.coords @ img) % n) @ _strides(group)


def _closure(add: np.ndarray, subgroup: frozenset[int], y: int) -> frozenset[int]:
    out = set(subgroup)
    frontier = list(subgroup)
    while frontier:
        nxt = []
        for h in frontier:
            z = int(add[h, y])
            if z not in out:
                out.add(z)
                nxt.append(z)
        frontier = nxt
    return frozenset(out)


@lru_cache(maxsize=None)
def _generator_images(group: AbelianGroup, cap: int) -> tuple[tuple[Element, ...], ...]:
    # Backtrack over images of e_1..e_k; the homomorphism is injective on
    # <e_1..e_i> exactly when the images generate a subgroup of that order.
    t = tables(group)
    elems = group.elements()
    ns = group.cyclic_orders
    cands = [[c for c in range(group.order) if t.orders[c] == n] for n in ns]
    found: list[tuple[Element, ...]] = []

    def rec(i: int, chosen: list[int], sub: frozenset[int]):
        if i == group.rank:
            found.append(tuple(elems[c] for c in chosen))
            if len(found) > cap:
                raise GroupTooLargeForAutEnumeration(
                    f"Aut({group}) has more than {cap} elements"
                )
            return
        target = math.prod(ns[: i + 1])
        for c in cands[i]:
            if c in sub:
                continue
            grown = _closure(t.add, sub, c)
            if len(grown) == target:
                chosen.append(c)
                rec(i + 1, chosen, grown)
                chosen.pop()

    rec(0, [], frozenset([0]))
    ident = tuple(tuple(int(i == j) for j in range(group.rank)) for i in range(group.rank))
    rest = sorted(im for im in found if im != ident)
    return (ident, *rest)


def _guard(group: AbelianGroup) -> None:
    bound = max_group_order()
    if group.order > bound:
        raise GroupTooLargeForAutEnumeration(
            f"|{group}| = {group.order} exceeds the automorphism bound {bound}"
        )


def automorphisms(group: AbelianGroup, *, cap: int = DEFAULT_MAX_AUTOMORPHISMS) -> list[Automorphism]:
    """The full automorphism group, identity first."""
    _guard(group)
    return [Automorphism(group, im) for im in _generator_images(group, cap)]


def automorphism_table(group: AbelianGroup, cap: int = DEFAULT_MAX_AUTOMORPHISMS) -> np.ndarray:
    """Array of shape (|Aut|, |G|): row r is the code permutation of the r-th automorphism."""
    # the bound is read from the environment, so check it outside the cache
    _guard(group)
    return _automorphism_table(group, cap)


@lru_cache(maxsize=None)
def _automorphism_table(group: AbelianGroup, cap: int) -> np.ndarray:
    images = _generator_images(group, cap)
    table = np.stack([_perm_of(group, im) for im in images]).astype(np.int32)
    table.setflags(write=False)
    return table


# -- subgroups -------------------------------------------------------------


def subgroup_closure(group: AbelianGroup, gens: Iterable[int], base: frozenset[int] = frozenset([0])) -> frozenset[int]:
    """Codes of the subgroup generated by ``base`` (a subgroup) and ``gens``."""
    add = tables(group).add
    sub = base
    for c in gens:
        if c not in sub:
            sub = _closure(add, sub, int(c))
    return sub


def quotient_rank(group: AbelianGroup, subgroup: frozenset[int]) -> int:
    """Minimal number of generators of G/H.

    Uses d(G/H) = max over primes p of dim_Fp (G / (H + pG)).
    """
    return _quotient_rank(group, subgroup)


@lru_cache(maxsize=65536)
def _quotient_rank(group: AbelianGroup, subgroup: frozenset[int]) -> int:
    best = 0
    for p in _primes_dividing(group.order):
        multiples = {group.code(tuple((p * a) % n for a, n in zip(x, group.cyclic_orders)))
                     for x in group.elements()}
        sub = subgroup_closure(group, sorted(multiples), subgroup)
        index, dim = group.order // len(sub), 0
        while index > 1:
            index //= p
            dim += 1
        best = max(best, dim)
    return best


def _strides(group: AbelianGroup) -> np.ndarray:
    return np.array(
        [math.prod(group.cyclic_orders[i + 1:]) for i in range(group.rank)], dtype=np.int64
    )


def _primes_dividing(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out
