"""Simply-laced diagrams, their spanning trees and the relation of twin vertices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import SpecError


def _pair(i, j):
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class Diagram:
    """An undirected graph on an ordered vertex list.

    Edges are kept exactly as given (normalized pairs, duplicates allowed) so
    that :func:`validate` can report self-loops and repeated edges.  Vertex
    labels only need to be hashable and mutually comparable; the double
    cover uses ``(vertex, sheet)`` tuples.
    """

    vertices: tuple
    edges: tuple

    @classmethod
    def from_edges(cls, edges, vertices=None):
        edges = tuple(_pair(i, j) for i, j in edges)
        if vertices is None:
            vertices = sorted({v for e in edges for v in e})
        return cls(tuple(vertices), edges)

    @cached_property
    def edge_set(self):
        return frozenset(self.edges)

    @cached_property
    def _adjacency(self):
        adj = {v: set() for v in self.vertices}
        for i, j in self.edges:
            if i != j and i in adj and j in adj:
                adj[i].add(j)
                adj[j].add(i)
        return {v: frozenset(n) for v, n in adj.items()}

    def neighbors(self, v):
        return self._adjacency[v]

    def adjacent(self, i, j):
        return j in self._adjacency[i]

    @property
    def n(self):
        return len(self.vertices)

    @property
    def cycle_rank(self):
        """First Betti number ``|E| - |I| + 1`` of a connected diagram."""
        return len(self.edge_set) - self.n + 1

    def is_connected(self):
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for w in self._adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def triangles(self):
        found = []
        for i, j in sorted(self.edge_set):
            if i == j or i not in self._adjacency or j not in self._adjacency:
                continue
            for k in sorted(self._adjacency[i] & self._adjacency[j]):
                if k > j:
                    found.append((i, j, k))
        return found

    def relabel(self, mapping):
        return Diagram(
            tuple(mapping[v] for v in self.vertices),
            tuple(_pair(mapping[i], mapping[j]) for i, j in self.edges),
        )

    def __str__(self):
        es = ", ".join(f"{i}-{j}" for i, j in sorted(self.edge_set))
        return f"Diagram(vertices={list(self.vertices)}, edges=[{es}])"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(d):
    """List every violated diagram invariant; an empty report means valid."""
    report = ValidationReport()
    bad = report.violations
    if len(set(d.vertices)) != len(d.vertices):
        bad.append("duplicate vertex labels")
    if len(set(d.vertices)) < 3:
        bad.append("fewer than 3 vertices")
    known = set(d.vertices)
    for i, j in d.edges:
        if i not in known or j not in known:
            bad.append(f"edge {i}-{j} uses an unknown vertex")
    for i, j in sorted(set(d.edges)):
        if i == j:
            bad.append(f"self-loop at {i}")
    seen = set()
    for e in d.edges:
        if e in seen and e[0] != e[1]:
            bad.append(f"repeated edge {e[0]}-{e[1]}")
        seen.add(e)
    if not d.is_connected():
        bad.append("disconnected")
    for t in d.triangles():
        bad.append("3-cycle " + "-".join(str(v) for v in t))
    return report


def require_valid(d):
    report = validate(d)
    if not report.ok:
        raise SpecError("invalid diagram: " + "; ".join(report.violations))


@dataclass(frozen=True)
class SpanningTree:
    """A BFS spanning tree.

    ``order`` is the BFS visiting order; it plays the role of the vertex
    labelling in which the endpoint of a tree edge nearer the root comes
    first.
    """

    root: object
    tree_edges: frozenset
    parent: dict
    order: tuple
    chords: tuple

    @cached_property
    def position(self):
        return {v: k for k, v in enumerate(self.order)}

    def precedes(self, i, j):
        return self.position[i] < self.position[j]

    def oriented(self, i, j):
        """The pair ``(i, j)`` reordered so that ``i`` precedes ``j``."""
        return (i, j) if self.precedes(i, j) else (j, i)

    def path_to_root(self, v):
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        return path


def default_root(d):
    return 0 if 0 in d.vertices else min(d.vertices)


def spanning_tree(d, root=None):
    """Deterministic BFS tree, neighbours explored in ascending label order."""
    if root is None:
        root = default_root(d)
    if root not in d.vertices:
        raise SpecError(f"root {root} is not a vertex of the diagram")
    parent = {}
    order = [root]
    seen = {root}
    queue = deque([root])
    tree = set()
    while queue:
        v = queue.popleft()
        for w in sorted(d.neighbors(v)):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                tree.add(_pair(v, w))
                order.append(w)
                queue.append(w)
    pos = {v: k for k, v in enumerate(order)}
    chords = sorted(
        (e for e in d.edge_set if e not in tree and e[0] != e[1]),
        key=lambda e: tuple(sorted((pos[e[0]], pos[e[1]]))),
    )
    chords = tuple(e if pos[e[0]] < pos[e[1]] else (e[1], e[0]) for e in chords)
    return SpanningTree(root, frozenset(tree), parent, tuple(order), chords)


@dataclass(frozen=True)
class CycleGenerator:
    """Fundamental cycle of a chord ``(i, j)``; ``i`` precedes ``j``.

    ``cycle`` is the closed walk ``i, j, ..., i``: the chord traversed from
    ``i`` to ``j``, then tree edges back to ``i``.
    """

    chord: tuple
    cycle: tuple

    def __len__(self):
        return len(self.cycle) - 1


def fundamental_generators(d, t):
    gens = []
    for i, j in t.chords:
        up_i = t.path_to_root(i)
        up_j = t.path_to_root(j)
        on_i = set(up_i)
        meet = next(v for v in up_j if v in on_i)
        down = up_j[: up_j.index(meet)]
        back = up_i[: up_i.index(meet) + 1][::-1]
        # i -> j, j up to the meeting vertex, then down to i
        gens.append(CycleGenerator((i, j), (i, *down, *back)))
    return gens


class Partition:
    """An equivalence relation on a vertex list, in canonical form.

    Blocks are sorted internally and ordered by their smallest element, so
    equal relations have equal ``blocks``.
    """

    def __init__(self, vertices, blocks=()):
        vertices = tuple(vertices)
        known = set(vertices)
        owner = {}
        merged = _UnionFind(vertices)
        for block in blocks:
            block = list(block)
            for v in block:
                if v not in known:
                    raise SpecError(f"block {block} uses unknown vertex {v}")
            for v in block[1:]:
                merged.union(block[0], v)
        groups = {}
        for v in vertices:
            groups.setdefault(merged.find(v), []).append(v)
        self.vertices = vertices
        self.blocks = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
        for b in self.blocks:
            for v in b:
                owner[v] = b
        self._owner = owner

    @classmethod
    def singletons(cls, vertices):
        return cls(vertices)

    @classmethod
    def generated_by(cls, vertices, pairs):
        return cls(vertices, [tuple(p) for p in pairs])

    def block_of(self, v):
        return self._owner[v]

    def related(self, i, j):
        return self._owner[i] is self._owner[j]

    def pairs(self):
        """All unordered pairs of distinct related vertices."""
        return [p for b in self.blocks for p in combinations(b, 2)]

    def is_equality(self):
        return all(len(b) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"Partition({self.format()})"

    def format(self):
        return "|".join("{" + ",".join(str(v) for v in b) + "}" for b in self.blocks)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)


def sim0(d):
    """Twin relation: non-adjacent vertices with a common neighbour and equal neighbourhoods."""
    pairs = []
    for i, j in combinations(d.vertices, 2):
        ni, nj = d.neighbors(i), d.neighbors(j)
        if j in ni:
            continue
        if ni & nj and ni == nj:
            pairs.append((i, j))
    return Partition.generated_by(d.vertices, pairs)


def refines(p, q):
    """True iff every block of ``p`` lies inside a block of ``q``."""
    if set(p.vertices) != set(q.vertices):
        raise SpecError("partitions live on different vertex sets")
    return all(set(b) <= set(q.block_of(b[0])) for b in p.blocks)
