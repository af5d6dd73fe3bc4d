"""Pairwise difference predicates between permutations, family verification,
and explicit difference digraphs.

Two permutations are "different" with respect to a digraph rule when some
coordinate pairs their images into an edge. The default symmetric reading
requires a witnessing coordinate in each direction (possibly distinct ones);
the one-sided reading needs just one; the robust reading needs a coordinate
pair carrying the same undirected edge in opposite orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .digraphs import (
    DigraphSpec,
    FiniteDigraph,
    covered_vertices,
    edge_predicate,
    spec_is_symmetric,
)
from .errors import BudgetError
from .permutations import Permutation, PermutationFamily

# difference_digraph materializes all n! permutations up to this n.
FACTORIAL_LIMIT_N = 8


class DiffMode(str, Enum):
    SYMMETRIC = "symmetric"
    ONESIDED = "onesided"
    ROBUST = "robust"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a pairwise family check.

    first_failure is (i, j, missing) with 1-based member indices and missing in
    {"forward", "backward", "both", "robust"}.
    """

    ok: bool
    checked_pairs: int
    first_failure: tuple[int, int, str] | None = None

    def to_json_dict(self) -> dict:
        failure = None
        if self.first_failure is not None:
            i, j, missing = self.first_failure
            failure = {"i": i, "j": j, "missing": missing}
        return {"ok": self.ok, "pairs": self.checked_pairs, "failure": failure}


def _check_compatible(spec: DigraphSpec, n: int, mode: DiffMode | None = None) -> None:
    cover = covered_vertices(spec)
    if cover is not None and n > cover:
        raise ValueError(f"spec covers only 1..{cover}, permutations of [{n}] given")
    if mode is DiffMode.ROBUST and not spec_is_symmetric(spec):
        raise ValueError("robust difference requires a symmetric edge set")


def directed_witness(pi: Permutation, rho: Permutation, spec: DigraphSpec) -> int | None:
    """Smallest 1-based coordinate i with (pi(i), rho(i)) an edge, or None."""
    if len(pi) != len(rho):
        raise ValueError(f"length mismatch: {len(pi)} vs {len(rho)}")
    _check_compatible(spec, len(pi))
    pred = edge_predicate(spec)
    for i, (a, b) in enumerate(zip(pi, rho)):
        if a != b and pred(a, b):
            return i + 1
    return None


def robust_witness(
    pi: Permutation, rho: Permutation, spec: DigraphSpec
) -> tuple[int, int] | None:
    """Coordinates (i, j) with (pi(i), rho(i)) = (rho(j), pi(j)) forming an edge.

    Only defined for symmetric specs. Since pi and rho are bijections, the only
    candidate j for a given i is the preimage of rho(i) under pi.
    """
    if len(pi) != len(rho):
        raise ValueError(f"length mismatch: {len(pi)} vs {len(rho)}")
    _check_compatible(spec, len(pi), DiffMode.ROBUST)
    pred = edge_predicate(spec)
    position = {value: idx for idx, value in enumerate(pi)}
    for i, (a, b) in enumerate(zip(pi, rho)):
        if a == b or not pred(a, b):
            continue
        j = position[b]
        if rho[j] == a:
            return i + 1, j + 1
    return None


def are_different(
    pi: Permutation,
    rho: Permutation,
    spec: DigraphSpec,
    mode: DiffMode = DiffMode.SYMMETRIC,
) -> bool:
    """Pairwise difference predicate under the chosen mode."""
    if mode is DiffMode.ROBUST:
        return robust_witness(pi, rho, spec) is not None
    forward = directed_witness(pi, rho, spec) is not None
    backward = directed_witness(rho, pi, spec) is not None
    if mode is DiffMode.ONESIDED:
        return forward or backward
    return forward and backward


def _missing_label(forward: bool, backward: bool) -> str:
    if not forward and not backward:
        return "both"
    return "forward" if not forward else "backward"


def verify_family(
    family: PermutationFamily, spec: DigraphSpec, mode: DiffMode = DiffMode.SYMMETRIC
) -> VerificationReport:
    """Check every unordered member pair, in index order, stopping at the first failure."""
    if len(family) == 0:
        raise ValueError("cannot verify an empty family")
    _check_compatible(spec, family.n, mode)
    pred = edge_predicate(spec)
    members = family.members

    def witnessed(p: Permutation, q: Permutation) -> bool:
        return any(a != b and pred(a, b) for a, b in zip(p, q))

    checked = 0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            checked += 1
            if mode is DiffMode.ROBUST:
                if robust_witness(members[i], members[j], spec) is None:
                    return VerificationReport(False, checked, (i + 1, j + 1, "robust"))
                continue
            forward = witnessed(members[i], members[j])
            backward = witnessed(members[j], members[i])
            if mode is DiffMode.ONESIDED:
                if not (forward or backward):
                    return VerificationReport(False, checked, (i + 1, j + 1, "both"))
            elif not (forward and backward):
                return VerificationReport(
                    False, checked, (i + 1, j + 1, _missing_label(forward, backward))
                )
    return VerificationReport(True, checked, None)


@dataclass(frozen=True)
class LabeledDigraph:
    """A finite digraph whose vertex i+1 is labeled by labels[i]."""

    graph: FiniteDigraph
    labels: tuple[Permutation, ...]


def difference_digraph(
    n: int,
    spec: DigraphSpec,
    vertices: list[Permutation] | None = None,
    factorial_limit_n: int = FACTORIAL_LIMIT_N,
) -> LabeledDigraph:
    """The difference digraph on permutations of [n]: edge (p, q) iff a
    directed witness from p to q exists.

    Defaults to all n! permutations in lexicographic order, which is refused
    above the factorial limit; pass an explicit vertex list to go higher.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    _check_compatible(spec, n)
    if vertices is None:
        if n > factorial_limit_n:
            raise BudgetError(
                f"n={n} exceeds the factorial limit {factorial_limit_n}; "
                "pass an explicit vertex list"
            )
        vertices = [tuple(p) for p in itertools.permutations(range(1, n + 1))]
    else:
        vertices = [tuple(p) for p in vertices]
        for p in vertices:
            if len(p) != n or sorted(p) != list(range(1, n + 1)):
                raise ValueError(f"not a permutation of [{n}]: {p}")
    pred = edge_predicate(spec)
    edges = set()
    for i, p in enumerate(vertices):
        for j, q in enumerate(vertices):
            if i != j and any(a != b and pred(a, b) for a, b in zip(p, q)):
                edges.add((i + 1, j + 1))
    return LabeledDigraph(FiniteDigraph(len(vertices), frozenset(edges)), tuple(vertices))
