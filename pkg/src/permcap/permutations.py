"""Permutations of [n] in one-line notation, loose index sets, swap products,
and a shifted Fibonacci sequence that counts them.

A set of naturals is "loose" when it contains no two consecutive integers.
For a loose F, the product of the transpositions (i, i+1) over i in F is
well-defined (the swaps are disjoint) and moves every point by at most 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

Permutation = tuple[int, ...]
LooseSet = tuple[int, ...]

# Largest index whose value still fits in a signed 64-bit integer.
FIBONACCI_MAX = 90


def fibonacci(n: int) -> int:
    """Shifted Fibonacci numbers: f(1) = 1, f(2) = 2, f(n) = f(n-1) + f(n-2).

    Note the shift from the classical indexing; f(n) counts the loose subsets
    of [n-1], which is why this variant is used everywhere in this package.
    """
    if not 1 <= n <= FIBONACCI_MAX:
        raise ValueError(f"fibonacci index must be in 1..{FIBONACCI_MAX}, got {n}")
    a, b = 1, 2
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def is_loose(elements: Iterable[int]) -> bool:
    """No two consecutive integers (input must be strictly increasing)."""
    elems = tuple(elements)
    return all(elems[i + 1] - elems[i] >= 2 for i in range(len(elems) - 1))


def loose_subsets(n: int) -> Iterator[LooseSet]:
    """All loose subsets of [n-1], by increasing size then lexicographically.

    Exactly fibonacci(n) sets in total. Loose k-subsets are generated directly
    from plain k-combinations via the gap shift e_i = c_i + (i-1), so nothing
    is filtered.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    m = n - 1
    yield ()
    for k in range(1, (m + 1) // 2 + 1):
        for combo in itertools.combinations(range(1, m - k + 2), k):
            yield tuple(c + i for i, c in enumerate(combo))


def sigma_from_loose(elements: Iterable[int], n: int) -> Permutation:
    """Product of the disjoint swaps (i, i+1) for i in a loose set; fixes the rest."""
    elems = tuple(sorted(elements))
    if not is_loose(elems):
        raise ValueError(f"set {elems} contains consecutive integers")
    if elems and (elems[0] < 1 or elems[-1] > n - 1):
        raise ValueError(f"elements of {elems} fall outside [{n - 1}]")
    images = list(range(1, n + 1))
    for i in elems:
        images[i - 1], images[i] = images[i], images[i - 1]
    return tuple(images)


def lambda_mu(elements: Iterable[int]) -> tuple[int, int]:
    """Cardinality and element sum of an index set."""
    elems = tuple(elements)
    return len(elems), sum(elems)


def is_permutation(seq: Iterable[int]) -> bool:
    values = sorted(seq)
    return values == list(range(1, len(values) + 1))


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


@dataclass
class PermutationFamily:
    """Distinct permutations of a common [n] with a provenance tag."""

    n: int
    members: list[Permutation]
    provenance: str = ""

    def __post_init__(self):
        self.members = [tuple(p) for p in self.members]
        for p in self.members:
            if len(p) != self.n or not is_permutation(p):
                raise ValueError(f"not a permutation of [{self.n}]: {p}")
        if len(set(self.members)) != len(self.members):
            raise ValueError("family members must be distinct")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.members)


_HEADER_RE = re.compile(r"^n=(\d+) size=(\d+)$")


def family_to_text(family: PermutationFamily) -> str:
    """Header line 'n=<n> size=<k>', then one space-separated permutation per line."""
    lines = [f"n={family.n} size={len(family)}"]
    lines.extend(" ".join(map(str, p)) for p in family.members)
    return "\n".join(lines) + "\n"


def parse_family(text: str, provenance: str = "") -> PermutationFamily:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty family file")
    match = _HEADER_RE.match(lines[0].strip())
    if match is None:
        raise ValueError(f"bad family header: {lines[0]!r}")
    n, size = int(match.group(1)), int(match.group(2))
    members = [tuple(int(tok) for tok in line.split()) for line in lines[1:]]
    if len(members) != size:
        raise ValueError(f"header promises {size} members, file has {len(members)}")
    return PermutationFamily(n, members, provenance=provenance)


def write_family(family: PermutationFamily, path: str | Path) -> None:
    Path(path).write_text(family_to_text(family))


def read_family(path: str | Path) -> PermutationFamily:
    path = Path(path)
    return parse_family(path.read_text(), provenance=f"file:{path.name}")
