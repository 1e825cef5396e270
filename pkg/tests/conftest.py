"""Independent brute-force oracles shared by the test modules.

Nothing here calls the enumeration, canonical-form or automorphism code of
the package; the oracles work on plain tuples with their own arithmetic.
"""

from __future__ import annotations

import math
from itertools import product

import pytest

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    return record


# -- plain-tuple group arithmetic -----------------------------------------


def bf_elements(orders):
    return [tuple(x) for x in product(*(range(n) for n in orders))]


def bf_add(orders, x, y):
    return tuple((a + b) % n for a, b, n in zip(x, y, orders))


def bf_generated(orders, gens):
    """Subgroup generated by gens, by saturating under addition."""
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                z = bf_add(orders, h, g)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen


def bf_automorphisms(orders):
    """All automorphisms as dicts, from every choice of generator images."""
    elems = bf_elements(orders)
    k = len(orders)
    options = [[y for y in elems if all((orders[i] * c) % n == 0 for c, n in zip(y, orders))]
               for i in range(k)]
    auts = []
    for images in product(*options):
        phi = {}
        for x in elems:
            v = [0] * k
            for a, y in zip(x, images):
                for j in range(k):
                    v[j] += a * y[j]
            phi[x] = tuple(c % n for c, n in zip(v, orders))
        if len(set(phi.values())) == len(elems):
            auts.append(phi)
    return auts


def bf_generating_automorphisms(orders):
    """A subset of Aut(G) that generates it under composition."""
    elems = bf_elements(orders)
    auts = bf_automorphisms(orders)
    gens, group = [], {tuple(elems)}
    for phi in auts:
        if tuple(phi[x] for x in elems) in group:
            continue
        gens.append(phi)
        frontier = list(group)
        while frontier:
            nxt = []
            for img in frontier:
                for g in gens:
                    composed = tuple(g[y] for y in img)
                    if composed not in group:
                        group.add(composed)
                        nxt.append(composed)
            frontier = nxt
    assert len(group) == len(auts)
    return gens


def bf_genus(orders, theta):
    n = math.prod(orders)
    def order(x):
        return math.lcm(*(m // math.gcd(m, a) for a, m in zip(x, orders)))
    chi = 2 - 2 * n + sum(n // order(x) * (order(x) - 1) for x in theta)
    return chi // 2


def bf_class_count(orders, s, min_genus=2):
    """Orbits of valid ordered tuples under S_s x Aut(G), by union-find."""
    elems = bf_elements(orders)
    zero = elems[0]
    nonzero = elems[1:]
    full = len(elems)
    generates: dict[frozenset, bool] = {}
    valid = []
    for t in product(nonzero, repeat=s):
        total = zero
        for x in t:
            total = bf_add(orders, total, x)
        if total != zero:
            continue
        key = frozenset(t)
        if key not in generates:
            generates[key] = len(bf_generated(orders, key)) == full
        if not generates[key]:
            continue
        if bf_genus(orders, t) < min_genus:
            continue
        valid.append(t)
    index = {t: i for i, t in enumerate(valid)}
    parent = list(range(len(valid)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    auts = bf_generating_automorphisms(orders)
    for t, i in index.items():
        for a in range(s - 1):
            u = list(t)
            u[a], u[a + 1] = u[a + 1], u[a]
            union(i, index[tuple(u)])
        for phi in auts:
            union(i, index[tuple(phi[x] for x in t)])
    return len({find(i) for i in range(len(valid))})
