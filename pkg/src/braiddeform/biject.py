"""Annotated sketches, the tree/sketch/region correspondences and parking labelings."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from . import guards
from .core import MINUS, PLUS, DeformationSpec, Region, expand_spec, sign_vector
from .errors import (
    Collision,
    InvalidSketch,
    LabelMismatch,
    NotApplicable,
    NotLinialTree,
    NotShiTree,
)
from .trees import PlaneTree, tree_count, tree_in_family

Letter = tuple  # (label, level)

# sketches ---------------------------------------------------------------------


@dataclass(frozen=True)
class AnnotatedSketch:
    letters: tuple
    m: int

    @property
    def n(self) -> int:
        return len(self.letters) // (self.m + 1)

    def labels(self) -> list:
        return sorted(i for i, s in self.letters if s == 0)

    def positions(self) -> dict:
        return {letter: p for p, letter in enumerate(self.letters)}

    def key(self) -> tuple:
        """Lexicographic key for the letter order: higher level first, then label."""
        return tuple((-s, i) for i, s in self.letters)

    def violation(self) -> str | None:
        labels = self.labels()
        alphabet = {(i, s) for i in labels for s in range(self.m + 1)}
        if len(self.letters) != len(alphabet) or set(self.letters) != alphabet:
            return "condition (a): letters must be the full alphabet, each once"
        pos = self.positions()
        for i in labels:
            for s in range(1, self.m + 1):
                if pos[(i, s - 1)] > pos[(i, s)]:
                    return f"condition (b) fails for label {i} level {s}"
        for i in labels:
            for j in labels:
                if i == j:
                    continue
                for s in range(1, self.m + 1):
                    for t in range(1, self.m + 1):
                        if pos[(i, s - 1)] < pos[(j, t - 1)] and pos[(i, s)] > pos[(j, t)]:
                            return f"condition (c) fails for ({i},{s}) and ({j},{t})"
        return None

    def is_valid(self) -> bool:
        return self.violation() is None

    def to_text(self) -> str:
        return " ".join(f"a{i}^{s}" for i, s in self.letters)

    def __str__(self):
        return self.to_text()

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> AnnotatedSketch:
        letters = tuple((int(i), int(s)) for i, s in re.findall(r"a(\d+)\^(\d+)", text))
        if m is None:
            m = max((s for _, s in letters), default=0)
        return cls(letters, m)


def sigma(point, m: int) -> AnnotatedSketch:
    """Sketch of the sorted values x_i + s, 0 <= s <= m."""
    if not isinstance(point, Mapping):
        point = {i + 1: v for i, v in enumerate(point)}
    values = sorted((Fraction(v) + s, i, s) for i, v in point.items() for s in range(m + 1))
    for (a, i, s), (b, j, t) in zip(values, values[1:]):
        if a == b:
            raise Collision(i, s, j, t)
    return AnnotatedSketch(tuple((i, s) for _, i, s in values), m)


def representative_point(sketch: AnnotatedSketch) -> dict:
    """Canonical rational point x with sigma(x) equal to the sketch.

    Consecutive letters a_i^s a_j^t demand x_j - x_i >= s - t + eps. The least
    solution is a longest-path potential in Z + Z eps, and eps = 1/(n+1) keeps
    the order because a path has at most n - 1 edges.
    """
    problem = sketch.violation()
    if problem:
        raise InvalidSketch(problem)
    labels = sketch.labels()
    edges = [(i, j, (s - t, 1)) for (i, s), (j, t) in zip(sketch.letters, sketch.letters[1:]) if i != j]
    dist = {i: (0, 0) for i in labels}
    for _ in range(len(labels) + 1):
        changed = False
        for i, j, (c, e) in edges:
            cand = (dist[i][0] + c, dist[i][1] + e)
            if cand > dist[j]:
                dist[j] = cand
                changed = True
        if not changed:
            break
    else:
        raise InvalidSketch("ordering constraints are cyclic")
    eps = Fraction(1, sketch.n + 1)
    return {i: dist[i][0] + dist[i][1] * eps for i in labels}


def enumerate_sketches(m: int, labels) -> Iterator[AnnotatedSketch]:
    """All annotated m-sketches on the labels, built from parenthesis words.

    A beta letter is annotated by the first active letter, which a FIFO queue
    tracks: each new letter with level below m becomes active at the back.
    """
    labels = tuple(sorted(labels))
    guards.check("sketches", tree_count(m, len(labels)))
    word: list = []

    def rec(remaining: tuple, queue: deque):
        if not remaining and not queue:
            yield AnnotatedSketch(tuple(word), m)
            return
        for k, i in enumerate(remaining):
            word.append((i, 0))
            if m > 0:
                queue.append((i, 0))
            yield from rec(remaining[:k] + remaining[k + 1:], queue)
            if m > 0:
                queue.pop()
            word.pop()
        if queue:
            i, s = queue.popleft()
            word.append((i, s + 1))
            if s + 1 < m:
                queue.append((i, s + 1))
            yield from rec(remaining, queue)
            if s + 1 < m:
                queue.pop()
            word.pop()
            queue.appendleft((i, s))

    yield from rec(labels, deque())


# trees and sketches -------------------------------------------------------------------


def psi(tree: PlaneTree) -> AnnotatedSketch:
    return AnnotatedSketch(tuple(pos for pos in tree.vertex_order() if pos is not None), tree.m)


_BUD = object()


def phi(sketch: AnnotatedSketch) -> PlaneTree:
    """Bud substitution: each letter fills the prec-least bud."""
    problem = sketch.violation()
    if problem:
        raise InvalidSketch(problem)
    m = sketch.m
    arity = m + 1
    kids: dict = {}
    root = _BUD

    def first_bud():
        best = None
        counter = 0

        def visit(pos, content, drift):
            nonlocal best, counter
            counter += 1
            if content is _BUD:
                if best is None or drift < best[0]:
                    best = (drift, pos)
                return
            if content is None:
                return
            for slot in range(arity - 1, -1, -1):
                visit((content, slot), kids[content][slot], drift + slot)

        visit(None, root, 0)
        return best[1]

    for i, s in sketch.letters:
        pos = first_bud()
        content = None
        if s == 0:
            content = i
            kids[i] = [_BUD] * arity
        if pos is None:
            root = content
        else:
            kids[pos[0]][pos[1]] = content
    pos = first_bud()
    if pos is None:
        root = None
    else:
        kids[pos[0]][pos[1]] = None

    def build(label):
        return (label, tuple(None if c is None else build(c) for c in kids[label]))

    return PlaneTree(arity, None if root is None else build(root))


def phi_local(sketch: AnnotatedSketch) -> PlaneTree:
    """Independent construction from the consecutive-letter rule."""
    letters = sketch.letters
    arity = sketch.m + 1
    if not letters:
        return PlaneTree(arity, None)
    kids = {i: [None] * arity for i in sketch.labels()}
    for (i, s), (j, t) in zip(letters, letters[1:]):
        kids[i][s] = j if t == 0 else None

    def build(label):
        return (label, tuple(None if c is None else build(c) for c in kids[label]))

    return PlaneTree(arity, build(letters[0][0]))


# regions -----------------------------------------------------------------------------


def region_of_tree(spec: DeformationSpec, tree: PlaneTree) -> Region:
    if sorted(tree.labels()) != sorted(spec.labels()):
        raise LabelMismatch(f"tree labels {tree.labels()} differ from {spec.labels()}")
    if tree.arity < spec.m + 1:
        raise LabelMismatch("tree arity is smaller than m + 1")
    hyperplanes = expand_spec(spec)
    signs = []
    for h in hyperplanes:
        i, j = spec.label(h.u), spec.label(h.v)
        if h.s >= 0:
            below = tree.precedes(tree.position_of(i), (j, h.s))
            signs.append(MINUS if below else PLUS)
        else:
            above = tree.precedes(tree.position_of(j), (i, -h.s))
            signs.append(PLUS if above else MINUS)
    return Region(tuple(hyperplanes), tuple(signs))


def sketch_region(spec: DeformationSpec, sketch: AnnotatedSketch) -> Region:
    return sign_vector(spec, representative_point(sketch))


# moves and maximality ------------------------------------------------------------------


def apply_move(sketch: AnnotatedSketch, move: tuple[int, int, int]) -> AnnotatedSketch:
    i, j, s = move
    m = sketch.m
    if not i < j or abs(s) > m:
        raise NotApplicable(f"move {move} out of range")
    pos = sketch.positions()
    letters = list(sketch.letters)
    for k in range(max(0, -s), min(m, m - s) + 1):
        a, b = pos.get((i, k)), pos.get((j, s + k))
        if a is None or b is None or abs(a - b) != 1:
            raise NotApplicable(f"letters ({i},{k}) and ({j},{s + k}) are not consecutive")
        letters[a], letters[b] = letters[b], letters[a]
    return AnnotatedSketch(tuple(letters), m)


def _spec_moves(spec: DeformationSpec, labels) -> list[tuple[int, int, int]]:
    m = spec.m
    out = []
    for a, i in enumerate(labels):
        for j in labels[a + 1:]:
            present = set(spec.pair_offsets(i, j))
            out.extend((i, j, s) for s in range(-m, m + 1) if s not in present)
    return out


def move_neighbours(spec: DeformationSpec, sketch: AnnotatedSketch) -> Iterator[AnnotatedSketch]:
    for move in _spec_moves(spec, sketch.labels()):
        try:
            yield apply_move(sketch, move)
        except NotApplicable:
            continue


def is_locally_maximal(spec: DeformationSpec, sketch: AnnotatedSketch) -> bool:
    key = sketch.key()
    return all(other.key() <= key for other in move_neighbours(spec, sketch))


def is_locally_maximal_by_tree(spec: DeformationSpec, sketch: AnnotatedSketch) -> bool:
    return tree_in_family(spec, phi(sketch))


def maximality_audit(spec: DeformationSpec, n: int | None = None) -> dict:
    """Explore S-move classes of all sketches and compare them with regions."""
    if n is not None and spec.N == 1:
        spec = spec.with_n((n,))
    labels = spec.labels()
    m = spec.m
    sketches = list(enumerate_sketches(m, labels))
    index = {sk.letters: k for k, sk in enumerate(sketches)}
    parent = list(range(len(sketches)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    local = []
    for k, sk in enumerate(sketches):
        is_local = True
        for other in move_neighbours(spec, sk):
            parent[find(k)] = find(index[other.letters])
            if other.key() > sk.key():
                is_local = False
        local.append(is_local)

    classes: dict[int, list[int]] = {}
    for k in range(len(sketches)):
        classes.setdefault(find(k), []).append(k)

    class_regions = []
    consistent = True
    maxima = set()
    for members in classes.values():
        regions = {sketch_region(spec, sketches[k]).signs for k in members}
        consistent &= len(regions) == 1
        class_regions.append(next(iter(regions)))
        maxima.add(max(members, key=lambda k: sketches[k].key()))
    local_set = {k for k, flag in enumerate(local) if flag}
    tree_rule = all(
        local[k] == is_locally_maximal_by_tree(spec, sk) for k, sk in enumerate(sketches)
    )
    return {
        "sketches": len(sketches),
        "classes": len(classes),
        "regions": len(set(class_regions)),
        "class_has_single_region": consistent,
        "classes_match_regions": consistent and len(set(class_regions)) == len(classes),
        "maximal": len(maxima),
        "locally_maximal": len(local_set),
        "maxima_are_locally_maximal": maxima <= local_set,
        "locally_maximal_equals_maximal": maxima == local_set,
        "local_rule_matches_tree_family": tree_rule,
    }


# parking functions -----------------------------------------------------------------------


def is_parking_function(p: Sequence[int]) -> bool:
    return all(v <= k for k, v in enumerate(sorted(p)))


def _require_shi(tree: PlaneTree) -> None:
    spec = DeformationSpec.uniform((0, 1), tree.size)
    if tree.arity != 2 or sorted(tree.labels()) != list(range(1, tree.size + 1)) or not tree_in_family(spec, tree):
        raise NotShiTree(tree.to_text())


def pak_stanley(tree: PlaneTree) -> tuple[int, ...]:
    _require_shi(tree)
    n = tree.size
    rank = {i: tree.node_rank(i) for i in range(1, n + 1)}
    out = []
    for i in range(1, n + 1):
        left = sum(1 for k in range(1, i) if rank[k] < rank[i])
        right = sum(1 for k in range(i + 1, n + 1) if tree.rank_of((k, 1)) <= rank[i])
        out.append(left + right)
    return tuple(out)


def pak_stanley_from_point(point) -> tuple[int, ...]:
    if not isinstance(point, Mapping):
        point = {i + 1: v for i, v in enumerate(point)}
    x = {i: Fraction(v) for i, v in point.items()}
    labels = sorted(x)
    return tuple(
        sum(1 for k in labels if k < i and x[k] < x[i]) + sum(1 for k in labels if k > i and x[k] + 1 < x[i])
        for i in labels
    )


def athanasiadis_linusson(tree: PlaneTree) -> tuple[int, ...]:
    _require_shi(tree)
    leaves = [pos for pos in tree.vertex_order() if pos is not None and tree.node_at(pos) is None]
    leaf_rank = {pos: k for k, pos in enumerate(leaves)}
    out = []
    for i in range(1, tree.size + 1):
        v = i
        while tree.child(v, 1) is not None:
            v = tree.child(v, 1)
        out.append(len(leaves) - 1 - leaf_rank[(v, 1)])
    return tuple(out)


# theta --------------------------------------------------------------------------------


def satisfies_condition_iii(tree: PlaneTree) -> bool:
    """Left nodes are smaller than their parent, right nodes larger."""
    if tree.arity != 2:
        return False
    for v in tree.labels():
        p = tree.parent(v)
        if p is None:
            continue
        if tree.ls(v) == 0 and not p > v:
            return False
        if tree.ls(v) == 1 and not p < v:
            return False
    return True


def theta(tree: PlaneTree) -> PlaneTree:
    """Bijection from Linial trees (cadet smaller than parent) to trees with condition (iii)."""
    spec = DeformationSpec.uniform((1,), max(tree.size, 0))
    if tree.arity != 2 or sorted(tree.labels()) != list(range(1, tree.size + 1)) or not tree_in_family(spec, tree):
        raise NotLinialTree(tree.to_text())
    return PlaneTree(2, _theta(tree.root))


def _theta(node):
    if node is None:
        return None
    spine = [node]
    while True:
        left, right = spine[-1][1]
        nxt = right if right is not None else left
        if nxt is None:
            break
        spine.append(nxt)
    k = len(spine) - 1
    images = []
    chosen = set()
    for idx in range(k):
        label, (left, right) = spine[idx]
        nxt = spine[idx + 1]
        if right is nxt:
            other, other_is_left = left, True
        else:
            other, other_is_left = right, False
        image = _theta(other)
        images.append(image)
        if (other is None and other_is_left) or (image is not None and image[0] > label):
            chosen.add(idx)
    images.append(None)
    up = sorted(chosen) + [k]
    down = [k] + sorted(set(range(k)) - chosen, reverse=True)
    left_of: dict[int, object] = {}
    right_of: dict[int, object] = {}
    for a, b in zip(up, up[1:]):
        left_of[a] = ("spine", b)
        right_of[a] = images[a]
    for p, a in enumerate(down):
        right_of[a] = ("spine", down[p + 1]) if p + 1 < len(down) else None
        left_of[a] = images[a]

    def build(idx):
        def resolve(c):
            if isinstance(c, tuple) and len(c) == 2 and c[0] == "spine":
                return build(c[1])
            return c

        return (spine[idx][0], (resolve(left_of[idx]), resolve(right_of[idx])))

    return build(up[0])
