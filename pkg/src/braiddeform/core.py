"""Deformation specifications, hyperplanes, regions and polynomial evaluations."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import IncompleteRegion, InexactDivision, OnHyperplane, UnknownVertex
from .poly import Poly


class Vertex(NamedTuple):
    """Copy ``index`` of vertex type ``type``; tuples order lexicographically."""

    type: int
    index: int

    def __str__(self):
        return f"{self.type}.{self.index}"


Label = Union[int, Vertex]


class Hyperplane(NamedTuple):
    """The hyperplane x_u - x_v = s with u < v."""

    u: Vertex
    v: Vertex
    s: int


class Sign(enum.IntEnum):
    MINUS = -1
    PLUS = 1

    def __str__(self):
        return "+" if self is Sign.PLUS else "-"


PLUS = Sign.PLUS
MINUS = Sign.MINUS


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class DeformationSpec:
    """Offset sets S_{a,b} for type pairs a <= b, plus the multiplicity vector."""

    N: int
    sets: tuple = field(repr=False)
    n_vector: tuple = ()

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        raw = dict(self.sets)
        table = {}
        for a in range(1, self.N + 1):
            for b in range(a, self.N + 1):
                table[(a, b)] = tuple(sorted(set(raw.pop((a, b), ()))))
        if raw:
            raise ValueError(f"type pairs out of range: {sorted(raw)}")
        n_vector = tuple(self.n_vector) if self.n_vector else (0,) * self.N
        if len(n_vector) != self.N or any(k < 0 for k in n_vector):
            raise ValueError("n_vector must hold N non-negative integers")
        object.__setattr__(self, "sets", tuple(sorted(table.items())))
        object.__setattr__(self, "n_vector", n_vector)

    # constructors -----------------------------------------------------
    @classmethod
    def graded(cls, N: int, sets: Mapping[tuple[int, int], Iterable[int]], n: Sequence[int] = ()) -> DeformationSpec:
        normalized: dict = {}
        for (a, b), S in sets.items():
            normalized[_pair(a, b)] = tuple(S)
        return cls(N, tuple(normalized.items()), tuple(n))

    @classmethod
    def uniform(cls, S: Iterable[int], n: int) -> DeformationSpec:
        return cls(1, (((1, 1), tuple(S)),), (n,))

    @classmethod
    def from_tuple(cls, sets: Mapping[tuple[int, int], Iterable[int]], N: int) -> DeformationSpec:
        """A tuple arrangement: one vertex per type, pairs a < b only."""
        return cls.graded(N, {p: S for p, S in sets.items() if p[0] != p[1]}, (1,) * N)

    @classmethod
    def constant_tuple(cls, S: Iterable[int], N: int) -> DeformationSpec:
        S = tuple(S)
        return cls.from_tuple({(a, b): S for a in range(1, N + 1) for b in range(a + 1, N + 1)}, N)

    @classmethod
    def graphical(cls, edges: Iterable[tuple[int, int]], on_edge: Iterable[int], off_edge: Iterable[int], N: int) -> DeformationSpec:
        """The tuple G(S, S'): S on edges of G, S' on non-edges."""
        edge_set = {_pair(a, b) for a, b in edges}
        on_edge, off_edge = tuple(on_edge), tuple(off_edge)
        sets = {
            (a, b): (on_edge if (a, b) in edge_set else off_edge)
            for a in range(1, N + 1)
            for b in range(a + 1, N + 1)
        }
        return cls.from_tuple(sets, N)

    @classmethod
    def potts(cls, edges: Iterable[tuple[int, int]], N: int, n: Sequence[int] | None = None) -> DeformationSpec:
        """m = 0 graphical spec: S_{a,a} = {0}, S_{a,b} = {0} exactly on edges."""
        sets = {(a, a): (0,) for a in range(1, N + 1)}
        for a, b in edges:
            sets[_pair(a, b)] = (0,)
        return cls.graded(N, sets, n if n is not None else (1,) * N)

    def with_n(self, n: Sequence[int]) -> DeformationSpec:
        return DeformationSpec(self.N, self.sets, tuple(n))

    # derived data -----------------------------------------------------
    @cached_property
    def table(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self.sets)

    def offsets(self, a: int, b: int) -> tuple[int, ...]:
        return self.table[_pair(a, b)]

    @cached_property
    def m(self) -> int:
        return max((abs(s) for _, S in self.sets for s in S), default=0)

    @property
    def size(self) -> int:
        return sum(self.n_vector)

    @property
    def is_uniform(self) -> bool:
        return self.N == 1

    @property
    def is_tuple(self) -> bool:
        return all(k == 1 for k in self.n_vector)

    def vertices(self) -> list[Vertex]:
        return [Vertex(a, i) for a in range(1, self.N + 1) for i in range(1, self.n_vector[a - 1] + 1)]

    def labels(self) -> list[Label]:
        """Natural labels: 1..n for uniform specs, 1..N for tuple specs, else vertices."""
        if self.N == 1:
            return list(range(1, self.n_vector[0] + 1))
        if self.is_tuple:
            return list(range(1, self.N + 1))
        return self.vertices()

    def vertex(self, label: Label) -> Vertex:
        if isinstance(label, Vertex):
            v = label
        elif isinstance(label, int) and self.N == 1:
            v = Vertex(1, label)
        elif isinstance(label, int) and self.is_tuple:
            v = Vertex(label, 1)
        elif isinstance(label, tuple) and len(label) == 2:
            v = Vertex(*label)
        else:
            raise UnknownVertex(label)
        if not (1 <= v.type <= self.N and 1 <= v.index <= self.n_vector[v.type - 1]):
            raise UnknownVertex(label)
        return v

    def label(self, v: Vertex) -> Label:
        if self.N == 1:
            return v.index
        if self.is_tuple:
            return v.type
        return v

    def pair_offsets(self, u: Label, v: Label) -> tuple[int, ...]:
        return self.offsets(self.vertex(u).type, self.vertex(v).type)

    @lru_cache(maxsize=None)
    def minus_set(self, u: Label, v: Label) -> frozenset[int]:
        """The oriented set S^-_{u,v} for distinct u, v."""
        vu, vv = self.vertex(u), self.vertex(v)
        S = self.offsets(vu.type, vv.type)
        if vu < vv:
            return frozenset(-s for s in S if s <= 0)
        return frozenset(s for s in S if s > 0) | {0}

    # serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "N": self.N,
            "sets": {f"{a},{b}": list(S) for (a, b), S in self.sets},
            "n": list(self.n_vector),
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> DeformationSpec:
        if isinstance(data, str):
            data = json.loads(data)
        if "S" in data:
            return cls.uniform(data["S"], int(data.get("n", 0)))
        sets = {}
        for key, S in data["sets"].items():
            a, b = (int(p) for p in key.split(","))
            sets[(a, b)] = S
        return cls.graded(int(data["N"]), sets, data.get("n", ()))


def parse_offsets(text: str) -> tuple[int, ...]:
    """Parse ``"-1,0,1"`` or ``"-2..1"`` style offset lists."""
    text = text.strip()
    if not text:
        return ()
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.update(range(int(lo), int(hi) + 1))
        elif part:
            out.add(int(part))
    return tuple(sorted(out))


# hyperplanes and regions -----------------------------------------------

def expand_spec(spec: DeformationSpec) -> list[Hyperplane]:
    verts = spec.vertices()
    out = []
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            for s in spec.offsets(u.type, v.type):
                out.append(Hyperplane(u, v, s))
    out.sort()
    return out


@dataclass(frozen=True)
class Region:
    hyperplanes: tuple
    signs: tuple

    def as_dict(self) -> dict[Hyperplane, Sign]:
        return dict(zip(self.hyperplanes, self.signs))

    def sign(self, h: Hyperplane) -> Sign:
        return self.as_dict()[h]

    def restrict(self, hyperplanes: Sequence[Hyperplane]) -> Region:
        lookup = self.as_dict()
        return Region(tuple(hyperplanes), tuple(lookup[h] for h in hyperplanes))

    def to_json(self, spec: DeformationSpec | None = None) -> list:
        def name(v):
            label = spec.label(v) if spec is not None else v
            return str(label) if isinstance(label, Vertex) else label

        return [
            {"u": name(h.u), "v": name(h.v), "s": h.s, "sign": str(sg)}
            for h, sg in zip(self.hyperplanes, self.signs)
        ]

    def code(self) -> str:
        return "".join(str(s) for s in self.signs)


def _point_map(spec: DeformationSpec, point) -> dict[Vertex, Fraction]:
    if isinstance(point, Mapping):
        return {spec.vertex(k): Fraction(v) for k, v in point.items()}
    verts = spec.vertices()
    if len(point) != len(verts):
        raise ValueError(f"point has {len(point)} coordinates, expected {len(verts)}")
    return {v: Fraction(c) for v, c in zip(verts, point)}


def sign_vector(spec: DeformationSpec, point, hyperplanes: Sequence[Hyperplane] | None = None) -> Region:
    coords = _point_map(spec, point)
    hyperplanes = expand_spec(spec) if hyperplanes is None else list(hyperplanes)
    signs = []
    for h in hyperplanes:
        d = coords[h.u] - coords[h.v]
        if d == h.s:
            raise OnHyperplane(*h)
        signs.append(PLUS if d > h.s else MINUS)
    return Region(tuple(hyperplanes), tuple(signs))


def _constraint_edges(spec: DeformationSpec, region: Region):
    """Edges b -> a of weight (c, e) encoding x_a - x_b <= c + e*eps."""
    expected = expand_spec(spec)
    if list(region.hyperplanes) != expected or len(region.signs) != len(expected):
        raise IncompleteRegion("region does not sign exactly the arrangement's hyperplanes")
    edges = []
    for h, sg in zip(region.hyperplanes, region.signs):
        if sg is PLUS or sg == 1:
            edges.append((h.u, h.v, (-h.s, -1)))  # x_v - x_u < -s
        elif sg == -1:
            edges.append((h.v, h.u, (h.s, -1)))  # x_u - x_v < s
        else:
            raise IncompleteRegion(f"unsigned hyperplane {h}")
    return edges


def _shortest_potentials(vertices, edges):
    dist = {v: (0, 0) for v in vertices}
    for _ in range(len(vertices) + 1):
        changed = False
        for b, a, (c, e) in edges:
            cand = (dist[b][0] + c, dist[b][1] + e)
            if cand < dist[a]:
                dist[a] = cand
                changed = True
        if not changed:
            return dist
    return None


def is_feasible(spec: DeformationSpec, region: Region) -> bool:
    return _shortest_potentials(spec.vertices(), _constraint_edges(spec, region)) is not None


def witness_point(spec: DeformationSpec, region: Region) -> dict[Vertex, Fraction] | None:
    """An exact interior point of the region, or None when it is empty."""
    edges = _constraint_edges(spec, region)
    dist = _shortest_potentials(spec.vertices(), edges)
    if dist is None:
        return None
    slack = 0
    for b, a, (c, e) in edges:
        slack = max(slack, abs(dist[b][1] + e - dist[a][1]))
    eps = Fraction(1, slack + 1)
    return {v: c + k * eps for v, (c, k) in dist.items()}


# rank and polynomial evaluations ----------------------------------------

def rank(spec: DeformationSpec) -> int:
    verts = spec.vertices()
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if spec.offsets(u.type, v.type):
                parent[find(u)] = find(v)
    components = len({find(v) for v in verts})
    return len(verts) - components


def normal_rank(spec: DeformationSpec) -> int:
    """Rank of the span of the normals e_u - e_v, by exact elimination."""
    verts = spec.vertices()
    index = {v: k for k, v in enumerate(verts)}
    rows = []
    for h in expand_spec(spec):
        row = [Fraction(0)] * len(verts)
        row[index[h.u]] = Fraction(1)
        row[index[h.v]] = Fraction(-1)
        rows.append(row)
    r = 0
    for col in range(len(verts)):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col] / rows[r][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        r += 1
    return r


def zaslavsky(chi: Poly, dimension: int, rank: int) -> tuple[int, int]:
    regions = (-1) ** dimension * chi(q=-1)
    bounded = (-1) ** rank * chi(q=1)
    return int(regions), int(bounded)


def characteristic(P: Poly) -> Poly:
    return P.subs({"y": 0})


def tutte_from_coboundary(P: Poly, rank: int, dimension: int | None = None) -> Poly:
    """Tutte polynomial T(x, y) from the coboundary polynomial P(q, y).

    P carries q**dimension for the empty subarrangement; the factor
    q**(dimension - rank) is removed first so non-essential arrangements work.
    """
    if dimension is None:
        dimension = P.degree("q")
    shift = dimension - rank
    if shift < 0 or (P and P.min_degree("q") < shift):
        raise InexactDivision("P is not divisible by q^(dimension - rank)")
    reduced = {}
    for mono, c in P.terms.items():
        d = dict(mono)
        d["q"] = d.get("q", 0) - shift
        reduced[tuple(sorted((n, e) for n, e in d.items() if e))] = c
    z = Poly.var("z")
    xm1 = Poly.var("x") - 1
    sub = Poly(reduced).subs({"q": xm1 * z, "y": z + 1})
    out = {}
    for mono, c in sub.terms.items():
        d = dict(mono)
        if d.get("z", 0) < rank:
            raise InexactDivision("P((x-1)(y-1), y) is not divisible by (y-1)^rank")
        d["z"] = d.get("z", 0) - rank
        out[tuple(sorted((n, e) for n, e in d.items() if e))] = c
    T = Poly(out).subs({"z": Poly.var("y") - 1})
    if any(isinstance(c, Fraction) for c in T.terms.values()):
        raise InexactDivision("Tutte polynomial has non-integer coefficients")
    return T


def coboundary_from_tutte(T: Poly, rank: int, dimension: int) -> Poly:
    """Inverse of :func:`tutte_from_coboundary`."""
    z = Poly.var("z")
    q = Poly.var("q")
    acc = Poly()
    for i, part in T.collect("x").items():
        if i > rank:
            raise InexactDivision("x-degree exceeds rank")
        acc = acc + part.subs({"y": z + 1}) * (z + q) ** i * z ** (rank - i)
    return (acc * q ** (dimension - rank)).subs({"z": Poly.var("y") - 1})
