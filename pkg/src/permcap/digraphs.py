"""Digraph models: rule-defined paths on the naturals, explicit finite digraphs,
and tournament machinery (lexicographic powers, cyclic-triangle counts).

Vertices are 1-based naturals throughout.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator, Union

from .errors import BudgetError

# Exact chromatic number is only attempted up to this many vertices.
CHROMATIC_VERTEX_LIMIT = 16

# Lexicographic powers refuse to materialize more vertices than this.
LEX_POWER_VERTEX_LIMIT = 3**10


@dataclass(frozen=True)
class FiniteDigraph:
    """Loop-free digraph on vertices 1..n with O(1) edge membership."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def out_degrees(self) -> list[int]:
        degs = [0] * self.n
        for u, _ in self.edges:
            degs[u - 1] += 1
        return degs

    def is_tournament(self) -> bool:
        if len(self.edges) != self.n * (self.n - 1) // 2:
            return False
        return all(
            ((u, v) in self.edges) != ((v, u) in self.edges)
            for u, v in itertools.combinations(range(1, self.n + 1), 2)
        )

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in sorted(self.edges)]})

    @classmethod
    def from_json(cls, text: str) -> "FiniteDigraph":
        data = json.loads(text)
        return cls(int(data["n"]), frozenset((int(u), int(v)) for u, v in data["edges"]))


def validate_orientation_word(word: str) -> None:
    """An orientation word assigns 'U' (k -> k+1) or 'D' (k+1 -> k) to every path edge."""
    if len(word) < 1:
        raise ValueError("orientation word must cover at least one edge")
    for i, ch in enumerate(word):
        if ch not in "UD":
            raise ValueError(f"orientation word may only contain 'U'/'D', found {ch!r} at index {i}")


@dataclass(frozen=True)
class SymmetricPath:
    """Path on the naturals with both orientations of every edge."""


@dataclass(frozen=True)
class AlternatingPath:
    """Path on the naturals, every edge oriented from its odd endpoint to its even one."""


@dataclass(frozen=True)
class Thrupath:
    """Path on the naturals, every edge oriented from its smaller endpoint to the larger."""


@dataclass(frozen=True)
class OrientedPath:
    """Path on [len(word)+1]; word[k-1] orients edge {k, k+1}."""

    word: str

    def __post_init__(self):
        validate_orientation_word(self.word)


@dataclass(frozen=True)
class SymmetricComplete:
    """Complete digraph on the naturals, both orientations of every pair."""


@dataclass(frozen=True)
class Explicit:
    """A finite digraph used directly as the difference rule."""

    graph: FiniteDigraph


DigraphSpec = Union[
    SymmetricPath, AlternatingPath, Thrupath, OrientedPath, SymmetricComplete, Explicit
]


def covered_vertices(spec: DigraphSpec) -> int | None:
    """Largest vertex the spec's rule covers, or None when the rule is unbounded."""
    if isinstance(spec, OrientedPath):
        return len(spec.word) + 1
    if isinstance(spec, Explicit):
        return spec.graph.n
    return None


def edge_predicate(spec: DigraphSpec) -> Callable[[int, int], bool]:
    """The raw edge rule as a closure.

    No range validation: callers that need range errors go through has_edge.
    All rules report False on u == v, so witness scans need no special-casing.
    """
    if isinstance(spec, SymmetricPath):
        return lambda u, v: abs(u - v) == 1
    if isinstance(spec, AlternatingPath):
        return lambda u, v: abs(u - v) == 1 and u % 2 == 1
    if isinstance(spec, Thrupath):
        return lambda u, v: v == u + 1
    if isinstance(spec, OrientedPath):
        edges = frozenset(
            (k, k + 1) if ch == "U" else (k + 1, k)
            for k, ch in enumerate(spec.word, start=1)
        )
        return lambda u, v: (u, v) in edges
    if isinstance(spec, SymmetricComplete):
        return lambda u, v: u != v
    if isinstance(spec, Explicit):
        edges = spec.graph.edges
        return lambda u, v: (u, v) in edges
    raise TypeError(f"not a digraph spec: {spec!r}")


def spec_is_symmetric(spec: DigraphSpec) -> bool:
    """True when every edge comes with its reverse (required by robust difference)."""
    if isinstance(spec, (SymmetricPath, SymmetricComplete)):
        return True
    if isinstance(spec, Explicit):
        return all((v, u) in spec.graph.edges for u, v in spec.graph.edges)
    return False


def has_edge(spec: DigraphSpec, u: int, v: int) -> bool:
    """Whether (u, v) is an edge under the spec's rule."""
    if u == v:
        raise ValueError(f"distinct vertices required, got u = v = {u}")
    if u < 1 or v < 1:
        raise ValueError(f"vertices must be >= 1, got ({u}, {v})")
    cover = covered_vertices(spec)
    if cover is not None and max(u, v) > cover:
        raise ValueError(f"vertex {max(u, v)} outside covered range 1..{cover}")
    return edge_predicate(spec)(u, v)


def restrict(spec: DigraphSpec, n: int) -> FiniteDigraph:
    """Induced digraph on [n]."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    cover = covered_vertices(spec)
    if cover is not None and n > cover:
        raise ValueError(f"spec covers only 1..{cover}, cannot restrict to [{n}]")
    pred = edge_predicate(spec)
    edges = frozenset(
        (u, v)
        for u in range(1, n + 1)
        for v in range(1, n + 1)
        if u != v and pred(u, v)
    )
    return FiniteDigraph(n, edges)


def block_gadget_digraph() -> FiniteDigraph:
    """Three-vertex block gadget: the symmetric triangle minus the single arc (2, 1).

    Vertex roles: 1 and 2 are the asymmetric pair, 3 is symmetrically joined to both.
    """
    return FiniteDigraph(3, frozenset({(1, 3), (3, 1), (2, 3), (3, 2), (1, 2)}))


def cyclic_triangle() -> FiniteDigraph:
    """Tournament on 3 vertices oriented as a directed cycle 1 -> 2 -> 3 -> 1."""
    return FiniteDigraph(3, frozenset({(1, 2), (2, 3), (3, 1)}))


def transitive_triangle() -> FiniteDigraph:
    """Tournament on 3 vertices with the acyclic orientation 1 -> 2 -> 3, 1 -> 3."""
    return FiniteDigraph(3, frozenset({(1, 2), (2, 3), (1, 3)}))


def lex_power(
    base: FiniteDigraph, t: int, vertex_limit: int = LEX_POWER_VERTEX_LIMIT
) -> FiniteDigraph:
    """t-th lexicographic power of a tournament.

    Vertices are length-t strings over V(base) in row-major order; (v, w) is an
    edge iff the base has an edge at the first coordinate where the strings differ.
    """
    if t < 1:
        raise ValueError(f"power must be positive, got {t}")
    if not base.is_tournament():
        raise ValueError("lexicographic powers are defined for tournaments only")
    m = base.n
    if m**t > vertex_limit:
        raise BudgetError(f"{m}^{t} vertices exceed the limit of {vertex_limit}")
    strings = list(itertools.product(range(1, m + 1), repeat=t))
    index = {s: i + 1 for i, s in enumerate(strings)}
    edges = set()
    for x in strings:
        for y in strings:
            if x == y:
                continue
            j = next(i for i in range(t) if x[i] != y[i])
            if (x[j], y[j]) in base.edges:
                edges.add((index[x], index[y]))
    return FiniteDigraph(m**t, frozenset(edges))


def _require_tournament(g: FiniteDigraph) -> None:
    if not g.is_tournament():
        raise ValueError("not a tournament")


def cyclic_triangle_count(g: FiniteDigraph) -> int:
    """Number of vertex triples inducing a directed 3-cycle.

    Every non-cyclic triple has exactly one vertex dominating the other two,
    so the cyclic count is C(n,3) minus sum over vertices of C(outdeg, 2).
    """
    _require_tournament(g)
    return comb(g.n, 3) - sum(comb(d, 2) for d in g.out_degrees())


def is_regular_tournament(g: FiniteDigraph) -> bool:
    """All out-degrees equal (in-degree equality then follows); forces odd n."""
    _require_tournament(g)
    return len(set(g.out_degrees())) == 1


def regular_cyclic_triangle_reference(n: int) -> int:
    """Cyclic-triangle count shared by every regular tournament on n (odd) vertices."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"regular tournaments need odd n, got {n}")
    return comb(n, 3) - n * comb((n - 1) // 2, 2)


def enumerate_regular_tournaments(n: int) -> Iterator[FiniteDigraph]:
    """All labeled tournaments on [n] with equal out-degrees, by pruned orientation search.

    Yields nothing for even n. Intended for small n (the n = 7 case has 2640 members).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n % 2 == 0:
        return
    target = (n - 1) // 2
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    outdeg = [0] * (n + 1)
    undecided = [0] * (n + 1)
    for u, v in pairs:
        undecided[u] += 1
        undecided[v] += 1
    chosen: list[tuple[int, int]] = []

    def feasible(v: int) -> bool:
        return outdeg[v] <= target and outdeg[v] + undecided[v] >= target

    def rec(i: int) -> Iterator[FiniteDigraph]:
        if i == len(pairs):
            yield FiniteDigraph(n, frozenset(chosen))
            return
        u, v = pairs[i]
        undecided[u] -= 1
        undecided[v] -= 1
        for a, b in ((u, v), (v, u)):
            outdeg[a] += 1
            chosen.append((a, b))
            if feasible(u) and feasible(v):
                yield from rec(i + 1)
            chosen.pop()
            outdeg[a] -= 1
        undecided[u] += 1
        undecided[v] += 1

    yield from rec(0)


def chromatic_number_underlying(
    g: FiniteDigraph, vertex_limit: int = CHROMATIC_VERTEX_LIMIT
) -> int:
    """Exact chromatic number of the symmetrized (undirected) graph.

    Backtracking over vertex colorings in descending-degree order; a new color
    may only be introduced as the next unused one, which removes color-permutation
    symmetry from the search.
    """
    if g.n > vertex_limit:
        raise BudgetError(f"{g.n} vertices exceed the chromatic limit of {vertex_limit}")
    adj: list[set[int]] = [set() for _ in range(g.n + 1)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    if not g.edges:
        return 1
    order = sorted(range(1, g.n + 1), key=lambda v: (-len(adj[v]), v))
    colors: dict[int, int] = {}

    def colorable(k: int, idx: int, used: int) -> bool:
        if idx == g.n:
            return True
        v = order[idx]
        taken = {colors[u] for u in adj[v] if u in colors}
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colors[v] = c
            if colorable(k, idx + 1, max(used, c + 1)):
                return True
            del colors[v]
        return False

    for k in range(2, g.n + 1):
        colors.clear()
        if colorable(k, 0, 0):
            return k
    return g.n
