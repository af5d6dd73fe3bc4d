"""Exact maximum family sizes by branch-and-bound clique search.

The pairwise difference relation is symmetric in all three modes, so the
largest family of pairwise different permutations of [n] is a maximum clique
in the undirected graph it induces on all n! permutations. The search runs
on bitset adjacency rows with greedy-coloring upper bounds, and by default
anchors the identity permutation: composing every member of a clique with a
fixed permutation on the right permutes coordinates only, so some maximum
clique always contains the identity.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import comb, log2
from typing import Callable

from .difference import DiffMode
from .digraphs import (
    DigraphSpec,
    chromatic_number_underlying,
    covered_vertices,
    edge_predicate,
    restrict,
    spec_is_symmetric,
)
from .errors import BudgetError
from .permutations import Permutation, PermutationFamily


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one exact search; exceeding time/nodes degrades to a lower bound."""

    max_n: int = 7
    time_limit: float = 600.0
    node_limit: int | None = None

    def __post_init__(self):
        if self.max_n < 1 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node limit must be positive")


@dataclass
class SearchResult:
    """Exact value (or certified lower bound when optimal is False) with witness."""

    n: int
    mode: DiffMode
    value: int
    witness: PermutationFamily
    optimal: bool
    nodes: int
    elapsed: float


def rate(size: int, n: int) -> float:
    """Per-coordinate growth rate log2(size)/n."""
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    return log2(size) / n


def middle_binomial(n: int) -> int:
    """C(n, ceil(n/2)), the conjectured exact value on the symmetric path."""
    return comb(n, (n + 1) // 2)


class _Exhausted(Exception):
    pass


def _difference_predicate(
    spec: DigraphSpec, mode: DiffMode
) -> Callable[[Permutation, Permutation], bool]:
    pred = edge_predicate(spec)
    if mode is DiffMode.SYMMETRIC:

        def diff(p: Permutation, q: Permutation) -> bool:
            forward = backward = False
            for a, b in zip(p, q):
                if a == b:
                    continue
                if not forward and pred(a, b):
                    if backward:
                        return True
                    forward = True
                if not backward and pred(b, a):
                    if forward:
                        return True
                    backward = True
            return False

    elif mode is DiffMode.ONESIDED:

        def diff(p: Permutation, q: Permutation) -> bool:
            return any(a != b and (pred(a, b) or pred(b, a)) for a, b in zip(p, q))

    else:

        def diff(p: Permutation, q: Permutation) -> bool:
            position = {value: idx for idx, value in enumerate(p)}
            for a, b in zip(p, q):
                if a != b and pred(a, b) and q[position[b]] == a:
                    return True
            return False

    return diff


def _degeneracy_order(adj: list[int]) -> list[int]:
    """Repeatedly remove a minimum-degree vertex; ties broken by index."""
    n = len(adj)
    alive = (1 << n) - 1
    degree = [adj[v].bit_count() for v in range(n)]
    order = []
    for _ in range(n):
        v = min((u for u in range(n) if alive >> u & 1), key=lambda u: (degree[u], u))
        order.append(v)
        alive &= ~(1 << v)
        neighbors = adj[v] & alive
        while neighbors:
            u = (neighbors & -neighbors).bit_length() - 1
            degree[u] -= 1
            neighbors &= neighbors - 1
    return order


def _greedy_clique(adj: list[int]) -> list[int]:
    """Deterministic greedy seed: highest surviving degree first."""
    clique: list[int] = []
    cand = (1 << len(adj)) - 1
    while cand:
        best_v, best_d = -1, -1
        scan = cand
        while scan:
            v = (scan & -scan).bit_length() - 1
            scan &= scan - 1
            d = (adj[v] & cand).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        clique.append(best_v)
        cand &= adj[best_v]
    return clique


def _max_clique_bitset(
    adj: list[int],
    deadline: float | None,
    node_limit: int | None,
    seed: list[int],
) -> tuple[int, list[int], int, bool]:
    """Branch and bound with greedy coloring bounds on a static degeneracy order.

    Deterministic: the branching order is fixed and the incumbent is replaced
    only on strict improvement, so identical inputs yield identical cliques.
    Returns (size, clique, nodes, optimal); the clique uses the caller's labels.
    """
    n = len(adj)
    best_clique = list(seed)
    best = len(best_clique)
    nodes = 0
    if n == 0:
        return best, best_clique, 0, True

    order = _degeneracy_order(adj)
    rank = {v: i for i, v in enumerate(order)}
    radj = [0] * n
    for v in range(n):
        row = 0
        neighbors = adj[v]
        while neighbors:
            u = (neighbors & -neighbors).bit_length() - 1
            row |= 1 << rank[u]
            neighbors &= neighbors - 1
        radj[rank[v]] = row

    def expand(stack: list[int], pool: int) -> None:
        nonlocal best, best_clique, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Exhausted
        if deadline is not None and nodes % 64 == 0 and time.perf_counter() > deadline:
            raise _Exhausted
        # greedy coloring: peel independent sets off the pool; a vertex in the
        # c-th class caps any clique through it at |stack| + c
        branch: list[tuple[int, int]] = []
        remaining = pool
        color = 0
        while remaining:
            color += 1
            avail = remaining
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                branch.append((v, color))
                avail &= ~(radj[v] | low)
                remaining &= ~low
        for v, c in reversed(branch):
            if len(stack) + c <= best:
                return
            stack.append(v)
            sub = pool & radj[v]
            if sub:
                expand(stack, sub)
            elif len(stack) > best:
                best = len(stack)
                best_clique = [order[u] for u in stack]
            stack.pop()
            pool &= ~(1 << v)

    optimal = True
    try:
        if deadline is not None and time.perf_counter() > deadline:
            raise _Exhausted
        expand([], (1 << n) - 1)
    except _Exhausted:
        optimal = False
    return best, sorted(best_clique), nodes, optimal


def max_family_exact(
    spec: DigraphSpec,
    n: int,
    mode: DiffMode = DiffMode.SYMMETRIC,
    budget: SearchBudget | None = None,
    anchored: bool = True,
) -> SearchResult:
    """Exact maximum size of a pairwise-different family of permutations of [n].

    With anchored=True the identity permutation is forced into the clique and
    only its neighbors are searched; validated against unanchored runs at
    small n. On budget exhaustion the result carries optimal=False and the
    best clique found so far, which is still a verified family.
    """
    budget = budget or SearchBudget()
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > budget.max_n:
        raise BudgetError(f"n={n} exceeds budget.max_n={budget.max_n}")
    cover = covered_vertices(spec)
    if cover is not None and n > cover:
        raise ValueError(f"spec covers only 1..{cover}, cannot search at n={n}")
    if mode is DiffMode.ROBUST and not spec_is_symmetric(spec):
        raise ValueError("robust difference requires a symmetric edge set")

    start = time.perf_counter()
    deadline = start + budget.time_limit
    diff = _difference_predicate(spec, mode)
    perms = list(itertools.permutations(range(1, n + 1)))
    if anchored:
        ident = perms[0]
        verts = [p for p in perms[1:] if diff(ident, p)]
        anchor: list[Permutation] = [ident]
    else:
        verts = perms
        anchor = []

    adj = [0] * len(verts)
    for i, p in enumerate(verts):
        row = adj[i]
        for j in range(i + 1, len(verts)):
            if diff(p, verts[j]):
                row |= 1 << j
                adj[j] |= 1 << i
        adj[i] = row

    seed = _greedy_clique(adj)
    size, clique, nodes, optimal = _max_clique_bitset(
        adj, deadline, budget.node_limit, seed
    )
    members = sorted(anchor + [verts[i] for i in clique])
    witness = PermutationFamily(
        n, members, provenance=f"exact-search {mode.value} n={n}"
    )
    return SearchResult(
        n=n,
        mode=mode,
        value=size + len(anchor),
        witness=witness,
        optimal=optimal,
        nodes=nodes,
        elapsed=time.perf_counter() - start,
    )


def check_supermultiplicative(
    spec: DigraphSpec,
    mode: DiffMode,
    n: int,
    m: int,
    budget: SearchBudget | None = None,
) -> bool:
    """Whether the exact values satisfy N(n+m) >= N(n) * N(m)."""
    budget = budget or SearchBudget()
    if n + m > budget.max_n:
        raise BudgetError(f"n+m={n + m} exceeds budget.max_n={budget.max_n}")
    results = [max_family_exact(spec, k, mode, budget) for k in (n, m, n + m)]
    if not all(r.optimal for r in results):
        raise BudgetError("inconclusive: search budget exhausted")
    return results[2].value >= results[0].value * results[1].value


def chromatic_bound_check(spec: DigraphSpec, n: int, result: SearchResult) -> bool:
    """Whether the exact value obeys the coloring bound chi(underlying)^n."""
    chi = chromatic_number_underlying(restrict(spec, n))
    return result.value <= chi**n
