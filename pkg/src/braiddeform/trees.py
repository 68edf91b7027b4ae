"""Labeled plane (m+1)-ary trees, cadet chains and boxed trees.

A tree is stored as nested tuples: a node is ``(label, (child_0, ..., child_m))``
and a leaf is ``None``.  Vertices other than the root are addressed by
*positions* ``(parent_label, slot)``; the root has position ``None``.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .core import DeformationSpec, Vertex
from .errors import UnknownVertex
from .poly import Poly

Position = tuple  # (parent_label, slot) or None for the root


@dataclass(frozen=True)
class PlaneTree:
    arity: int
    root: tuple | None

    # structure --------------------------------------------------------
    @cached_property
    def _info(self) -> dict:
        info = {}

        def walk(node, parent, slot):
            label, kids = node
            if len(kids) != self.arity:
                raise ValueError(f"node {label} has {len(kids)} children, expected {self.arity}")
            if label in info:
                raise ValueError(f"duplicate label {label}")
            info[label] = (parent, slot, tuple(k[0] if k is not None else None for k in kids))
            for s, kid in enumerate(kids):
                if kid is not None:
                    walk(kid, label, s)

        if self.root is not None:
            walk(self.root, None, 0)
        return info

    @property
    def m(self) -> int:
        return self.arity - 1

    @property
    def size(self) -> int:
        return len(self._info)

    def labels(self) -> list:
        return sorted(self._info)

    @property
    def root_label(self):
        return None if self.root is None else self.root[0]

    def _require(self, v):
        if v not in self._info:
            raise UnknownVertex(v)
        return self._info[v]

    def parent(self, v):
        return self._require(v)[0]

    def ls(self, v) -> int:
        """Number of left siblings of node v, leaves included."""
        parent, slot, _ = self._require(v)
        return 0 if parent is None else slot

    def children(self, u) -> tuple:
        return self._require(u)[2]

    def child(self, u, slot):
        return self.children(u)[slot]

    def cadet(self, u):
        """Rightmost child of u that is a node, or None."""
        for kid in reversed(self.children(u)):
            if kid is not None:
                return kid
        return None

    def is_cadet_sequence(self, seq: Sequence) -> bool:
        if not seq:
            return False
        for v in seq:
            self._require(v)
        return all(self.cadet(a) == b for a, b in zip(seq, seq[1:]))

    def cadet_paths(self) -> list[tuple]:
        """Maximal cadet sequences; together they partition the nodes."""
        paths = []
        for v in self.preorder():
            p = self.parent(v)
            if p is not None and self.cadet(p) == v:
                continue
            path = [v]
            while (c := self.cadet(path[-1])) is not None:
                path.append(c)
            paths.append(tuple(path))
        return paths

    def preorder(self) -> list:
        out = []

        def walk(node):
            if node is None:
                return
            out.append(node[0])
            for kid in node[1]:
                walk(kid)

        walk(self.root)
        return out

    def subtree(self, v) -> PlaneTree:
        def find(node):
            if node is None:
                return None
            if node[0] == v:
                return node
            for kid in node[1]:
                hit = find(kid)
                if hit is not None:
                    return hit
            return None

        self._require(v)
        return PlaneTree(self.arity, find(self.root))

    def relabel(self, mapping) -> PlaneTree:
        def walk(node):
            if node is None:
                return None
            return (mapping[node[0]], tuple(walk(k) for k in node[1]))

        return PlaneTree(self.arity, walk(self.root))

    def leaf_count(self) -> int:
        return self.m * self.size + 1

    # the order prec_T ---------------------------------------------------
    def position_of(self, v) -> Position:
        parent, slot, _ = self._require(v)
        return None if parent is None else (parent, slot)

    def node_at(self, pos: Position):
        """Label of the node at a position, or None if it is a leaf."""
        if pos is None:
            return self.root_label
        return self.child(pos[0], pos[1])

    def drift(self, pos: Position) -> int:
        """Sum of ls over the path from the root to the vertex at ``pos``."""
        total = 0
        while pos is not None:
            parent, slot = pos
            total += slot
            pos = self.position_of(parent)
        return total

    @cached_property
    def _order(self) -> tuple[list, dict]:
        keyed = []

        def visit(pos, node, drift):
            keyed.append((drift, len(keyed), pos))
            if node is not None:
                label, kids = node
                for slot in range(self.arity - 1, -1, -1):
                    visit((label, slot), kids[slot], drift + slot)

        visit(None, self.root, 0)
        keyed.sort()
        order = [pos for _, _, pos in keyed]
        return order, {pos: k for k, pos in enumerate(order)}

    def vertex_order(self) -> list[Position]:
        """All vertex positions sorted by prec_T (root first)."""
        return list(self._order[0])

    def rank_of(self, pos: Position) -> int:
        return self._order[1][pos]

    def precedes(self, a: Position, b: Position) -> bool:
        return self.rank_of(a) < self.rank_of(b)

    def node_rank(self, v) -> int:
        return self.rank_of(self.position_of(v))

    # text format --------------------------------------------------------
    def to_text(self) -> str:
        def walk(node):
            if node is None:
                return "."
            label, kids = node
            return "(" + " ".join([_label_text(label)] + [walk(k) for k in kids]) + ")"

        return walk(self.root)

    def __str__(self):
        return self.to_text()

    @classmethod
    def parse(cls, text: str, arity: int | None = None) -> PlaneTree:
        tokens = re.findall(r"\(|\)|[^\s()]+", text)
        pos = 0

        def parse_at():
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            if tok == ".":
                return None
            if tok != "(":
                raise ValueError(f"unexpected token {tok!r}")
            label = _parse_label(tokens[pos])
            pos += 1
            kids = []
            while tokens[pos] != ")":
                kids.append(parse_at())
            pos += 1
            return (label, tuple(kids))

        root = parse_at()
        if pos != len(tokens):
            raise ValueError("trailing tokens in tree text")
        if arity is None:
            arity = len(root[1]) if root is not None else 1
        tree = cls(arity, root)
        tree._info  # validate
        return tree


def _label_text(label) -> str:
    if isinstance(label, Vertex):
        return f"{label.type}.{label.index}"
    return str(label)


def _parse_label(tok: str):
    if "." in tok:
        a, i = tok.split(".")
        return Vertex(int(a), int(i))
    return int(tok)


def leaf_tree(arity: int) -> PlaneTree:
    return PlaneTree(arity, None)


# enumeration -----------------------------------------------------------

def tree_count(m: int, n: int) -> int:
    return math.factorial((m + 1) * n) // math.factorial(m * n + 1)


@lru_cache(maxsize=None)
def _subtrees(arity: int, labels: tuple) -> tuple:
    if not labels:
        return (None,)
    out = []
    for node in _nodes(arity, labels):
        out.append(node)
    return tuple(out)


def _nodes(arity: int, labels: tuple, roots: Iterable | None = None) -> Iterator[tuple]:
    for root in (labels if roots is None else roots):
        rest = tuple(l for l in labels if l != root)
        for slots in itertools.product(range(arity), repeat=len(rest)):
            parts = [tuple(l for l, s in zip(rest, slots) if s == k) for k in range(arity)]
            for kids in itertools.product(*(_subtrees(arity, p) for p in parts)):
                yield (root, kids)


def enumerate_trees(m: int, labels: Iterable, roots: Iterable | None = None) -> Iterator[PlaneTree]:
    """All (m+1)-ary plane trees on the labels, each once, in a fixed order.

    Trees are generated recursively: a root label in increasing order, then
    every assignment of the remaining labels to child slots, then every choice
    of subtrees slot by slot.  ``roots`` restricts the root labels, which lets
    callers split the stream into independent chunks.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    labels = tuple(sorted(labels))
    arity = m + 1
    if not labels:
        yield PlaneTree(arity, None)
        return
    for node in _nodes(arity, labels, roots):
        yield PlaneTree(arity, node)


def random_tree(m: int, labels: Sequence, rng: random.Random) -> PlaneTree:
    """A random tree built by growing random leaves (not uniform)."""
    arity = m + 1
    labels = list(labels)
    rng.shuffle(labels)
    if not labels:
        return PlaneTree(arity, None)
    kids = {labels[0]: [None] * arity}
    slots = [(labels[0], s) for s in range(arity)]
    for label in labels[1:]:
        parent, s = slots.pop(rng.randrange(len(slots)))
        kids[parent][s] = label
        kids[label] = [None] * arity
        slots.extend((label, k) for k in range(arity))

    def build(label):
        return (label, tuple(None if c is None else build(c) for c in kids[label]))

    return PlaneTree(arity, build(labels[0]))


# module-level accessors ----------------------------------------------------

def ls(tree: PlaneTree, v) -> int:
    return tree.ls(v)


def cadet(tree: PlaneTree, u):
    return tree.cadet(u)


def is_cadet_sequence(tree: PlaneTree, seq: Sequence) -> bool:
    return tree.is_cadet_sequence(seq)


def drift(tree: PlaneTree, pos: Position) -> int:
    return tree.drift(pos)


# chains and boxed trees ------------------------------------------------------

CadetChain = tuple


@dataclass(frozen=True)
class BoxedTree:
    tree: PlaneTree
    boxes: tuple  # tuple of cadet chains, sorted

    @property
    def box_count(self) -> int:
        return len(self.boxes)

    def is_well_formed(self) -> bool:
        covered = [v for box in self.boxes for v in box]
        return sorted(covered) == self.tree.labels() and all(
            self.tree.is_cadet_sequence(b) for b in self.boxes
        )


def _gaps(tree: PlaneTree, chain: Sequence) -> list[int]:
    """Prefix sums of ls along the chain, starting at 0 for v_1."""
    pos = [0]
    for v in chain[1:]:
        pos.append(pos[-1] + tree.ls(v))
    return pos


def chain_energy(spec: DeformationSpec, tree: PlaneTree, chain: Sequence) -> int:
    pos = _gaps(tree, chain)
    m = spec.m
    total = 0
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            d = pos[j] - pos[i]
            if d > m:
                break
            if d in spec.minus_set(chain[i], chain[j]):
                total += 1
    return total


def is_valid_chain(spec: DeformationSpec, tree: PlaneTree, chain: Sequence) -> bool:
    """Every pair i < j has sum of ls(v_{i+1..j}) outside S^-_{v_i, v_j}."""
    return chain_energy(spec, tree, chain) == 0


def is_valid_chain_uniform(S: Iterable[int], tree: PlaneTree, chain: Sequence) -> bool:
    """The single-type formulation, kept separate for cross-checking."""
    S = set(S)
    pos = _gaps(tree, chain)
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            d = pos[j] - pos[i]
            if (d in S or d == 0) and not chain[i] < chain[j]:
                return False
            if -d in S and not chain[i] > chain[j]:
                return False
    return True


def is_locally_valid_chain(spec: DeformationSpec, tree: PlaneTree, chain: Sequence) -> bool:
    """Consecutive-pair rule; equivalent to validity when S is transitive."""
    return all(tree.ls(b) not in spec.minus_set(a, b) for a, b in zip(chain, chain[1:]))


def is_admissible_chain(tree: PlaneTree, chain: Sequence) -> bool:
    return all(tree.ls(b) != 0 or a < b for a, b in zip(chain, chain[1:]))


def is_admissible(boxed: BoxedTree) -> bool:
    return all(is_admissible_chain(boxed.tree, b) for b in boxed.boxes)


def boxed_energy(spec: DeformationSpec, boxed: BoxedTree) -> int:
    return sum(chain_energy(spec, boxed.tree, b) for b in boxed.boxes)


def _path_partitions(path: tuple) -> Iterator[list[tuple]]:
    k = len(path)
    for cuts in itertools.product((True, False), repeat=k - 1):
        chains, start = [], 0
        for i, cut in enumerate(cuts):
            if cut:
                chains.append(path[start:i + 1])
                start = i + 1
        chains.append(path[start:])
        yield chains


def enumerate_boxed_trees(spec: DeformationSpec, tree: PlaneTree, admissible: bool = False) -> Iterator[BoxedTree]:
    """Boxed trees over ``tree``.

    By default only boxes that are valid chains (energy zero).  With
    ``admissible=True`` every admissible box structure is produced instead.
    """
    if tree.arity != spec.m + 1:
        raise ValueError(f"tree arity {tree.arity} does not match m+1 = {spec.m + 1}")
    options = []
    for path in tree.cadet_paths():
        ok = []
        for chains in _path_partitions(path):
            if admissible:
                good = all(is_admissible_chain(tree, c) for c in chains)
            else:
                good = all(is_valid_chain(spec, tree, c) for c in chains)
            if good:
                ok.append(chains)
        options.append(ok)
    for combo in itertools.product(*options):
        boxes = tuple(sorted(c for chains in combo for c in chains))
        yield BoxedTree(tree, boxes)


def signed_weight(spec: DeformationSpec, tree: PlaneTree) -> int:
    """Sum over valid boxed structures of (-1)^(n - |B|)."""
    total = 1
    for path in tree.cadet_paths():
        part = 0
        for chains in _path_partitions(path):
            if all(is_valid_chain(spec, tree, c) for c in chains):
                part += (-1) ** (len(path) - len(chains))
        total *= part
        if not total:
            return 0
    return total


def box_width(tree: PlaneTree, chain: Sequence) -> int:
    """Children of the chain that are neither in it nor right of a cadet in it."""
    return sum(tree.ls(v) for v in chain[1:]) + tree.m + 1


def energy_weight(spec: DeformationSpec, tree: PlaneTree, leaf_weight: bool = False) -> Poly:
    """Sum over admissible boxed structures of (-1)^|B| y^energy.

    With ``leaf_weight`` each term is further multiplied by the number of
    vertices of the tree obtained by contracting every box to one node,
    which is 1 + the sum of the box widths.
    """
    y = Poly.var("y")
    per_path = []
    for path in tree.cadet_paths():
        terms = []
        for chains in _path_partitions(path):
            if all(is_admissible_chain(tree, c) for c in chains):
                e = sum(chain_energy(spec, tree, c) for c in chains)
                w = sum(box_width(tree, c) for c in chains)
                terms.append((len(chains), e, w))
        per_path.append(terms)
    if not leaf_weight:
        total = Poly.const(1)
        for terms in per_path:
            total = total * sum((Poly({(("y", e),) if e else (): (-1) ** b}) for b, e, _ in terms), Poly())
        return total
    acc = Poly()
    for combo in itertools.product(*per_path):
        boxes = sum(b for b, _, _ in combo)
        e = sum(en for _, en, _ in combo)
        vertices = 1 + sum(w for _, _, w in combo)
        acc = acc + vertices * (-1) ** boxes * y ** e
    return acc


def tree_in_family(spec: DeformationSpec, tree: PlaneTree) -> bool:
    """Every cadet edge u -> v satisfies ls(v) in S^-_{u,v}."""
    for u in tree.labels():
        v = tree.cadet(u)
        if v is not None and tree.ls(v) not in spec.minus_set(u, v):
            return False
    return True


def family(spec: DeformationSpec) -> Iterator[PlaneTree]:
    for tree in enumerate_trees(spec.m, spec.labels()):
        if tree_in_family(spec, tree):
            yield tree


def trees_to_json(trees: Iterable[PlaneTree]) -> list[str]:
    return [t.to_text() for t in trees]
