"""Brute-force ground truth, independent of the tree machinery."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from . import guards
from .biject import enumerate_sketches, representative_point
from .core import DeformationSpec, Region, Vertex, sign_vector
from .poly import Poly
from .series import ExpSeries

Edge = tuple


def _vertex_edges(spec: DeformationSpec, graph: Iterable[Edge]) -> list[tuple[Vertex, Vertex]]:
    out = set()
    for a, b in graph:
        u, v = spec.vertex(a), spec.vertex(b)
        if u == v:
            raise ValueError(f"loop at {u}")
        out.add((min(u, v), max(u, v)))
    return sorted(out)


def _components(verts: Sequence, edges: Sequence[tuple]) -> list[list]:
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    groups: dict = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    return [sorted(g) for g in groups.values()]


def _count_component(spec: DeformationSpec, comp: list, adjacency: dict, window: int) -> int:
    # BFS from the smallest vertex, which is pinned at 0
    order = [comp[0]]
    seen = {comp[0]}
    for v in order:
        for w in sorted(adjacency[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)

    def offset_set(u, v):
        return spec.offsets(u.type, v.type)

    values: dict = {comp[0]: 0}

    def candidates(w):
        for u in adjacency[w]:
            if u in values:
                if u < w:  # x_u - x_w = s
                    return [values[u] - s for s in offset_set(u, w)]
                return [values[u] + s for s in offset_set(w, u)]
        raise AssertionError("BFS order lost connectivity")

    def consistent(w, x):
        if abs(x) > window:
            return False
        for u in adjacency[w]:
            if u in values:
                diff = values[u] - x if u < w else x - values[u]
                lo, hi = (u, w) if u < w else (w, u)
                if diff not in offset_set(lo, hi):
                    return False
        return True

    def rec(k):
        if k == len(order):
            return 1
        w = order[k]
        total = 0
        for x in set(candidates(w)):
            if consistent(w, x):
                values[w] = x
                total += rec(k + 1)
                del values[w]
        return total

    return rec(1)


def count_potentials(spec: DeformationSpec, graph: Iterable[Edge]) -> int:
    """Integer potentials with x_u - x_v in S_{u,v} on every edge, zero at component minima."""
    edges = _vertex_edges(spec, graph)
    verts = spec.vertices()
    adjacency: dict = {v: set() for v in verts}
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    window = spec.m * max(len(verts) - 1, 0)
    total = 1
    for comp in _components(verts, edges):
        if len(comp) > 1:
            total *= _count_component(spec, comp, adjacency, window)
            if total == 0:
                return 0
    return total


def whitney_coboundary(spec: DeformationSpec) -> Poly:
    """Sum over graphs G of (y-1)^e(G) q^comp(G) |W(G)|."""
    verts = spec.vertices()
    support = [
        (u, v) for i, u in enumerate(verts) for v in verts[i + 1:] if spec.offsets(u.type, v.type)
    ]
    guards.check("graphs", 2 ** len(support))
    tally: dict[tuple[int, int], int] = {}
    for mask in range(2 ** len(support)):
        edges = [e for k, e in enumerate(support) if mask >> k & 1]
        count = count_potentials(spec, edges)
        if count:
            key = (len(edges), len(_components(verts, edges)))
            tally[key] = tally.get(key, 0) + count
    q, ym1 = Poly.var("q"), Poly.var("y") - 1
    out = Poly()
    for (e, c), count in tally.items():
        out = out + count * ym1 ** e * q ** c
    return out


def regions_by_sketch_enumeration(spec: DeformationSpec) -> tuple[int, set[Region]]:
    """Distinct sign vectors of the representative points of all m-sketches."""
    regions = {
        sign_vector(spec, representative_point(sk)) for sk in enumerate_sketches(spec.m, spec.labels())
    }
    return len(regions), regions


def potts_partition(edges: Iterable[Edge], N: int) -> Poly:
    """Sum over colorings f of [N] of y^mono(f), interpolated as a polynomial in q."""
    edges = [(a - 1, b - 1) for a, b in edges]
    guards.check("colorings", sum(q ** N for q in range(N + 1)))
    y = Poly.var("y")
    values = []
    for q in range(N + 1):
        counts: dict[int, int] = {}
        for f in itertools.product(range(q), repeat=N):
            mono = sum(1 for a, b in edges if f[a] == f[b])
            counts[mono] = counts.get(mono, 0) + 1
        values.append(sum((c * y ** e for e, c in counts.items()), Poly()))
    q = Poly.var("q")
    out = Poly()
    for k, v in enumerate(values):
        basis = Poly.const(1)
        for j in range(N + 1):
            if j != k:
                basis = basis * (q - j) / Fraction(k - j)
        out = out + v * basis
    return out


def acyclic_orientations(edges: Iterable[Edge], N: int) -> int:
    edges = sorted({(min(a, b), max(a, b)) for a, b in edges})
    guards.check("orientations", 2 ** len(edges))
    total = 0
    for flips in itertools.product((False, True), repeat=len(edges)):
        arcs = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
        indeg = {v: 0 for v in range(1, N + 1)}
        out: dict = {v: [] for v in range(1, N + 1)}
        for a, b in arcs:
            out[a].append(b)
            indeg[b] += 1
        stack = [v for v, d in indeg.items() if d == 0]
        removed = 0
        while stack:
            v = stack.pop()
            removed += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        total += removed == N
    return total


def independent_set_series(edges: Iterable[Edge], N: int, trunc: int) -> ExpSeries:
    """Sum over independent sets A of the graph of prod_{a in A} t_a."""
    edge_set = {(min(a, b), max(a, b)) for a, b in edges}
    coeffs = {}
    for size in range(min(N, trunc) + 1):
        for A in itertools.combinations(range(1, N + 1), size):
            if not any(p in edge_set for p in itertools.combinations(A, 2)):
                coeffs[tuple(1 if a in A else 0 for a in range(1, N + 1))] = 1
    return ExpSeries(N, trunc, coeffs)
