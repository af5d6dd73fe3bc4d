"""Explicit families of pairwise graph-different permutations, and the
ternary-word cliques that power the block-embedding construction.

Size guarantees:
  - alternating_family(n)        size f(n), different on the alternating path
  - thrupath_family(n)           size >= f(n)/n^3, different on the thrupath
  - robust_family(n)             size 2^floor(n/2), robustly different on the path
  - gadget_power_clique(n)       size >= 3^n/(2n+1), symmetric clique of ternary words
  - block_embedding_family(w, k) size >= 3^k/(2k+1), different on ANY oriented path
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import ceil

from .digraphs import DigraphSpec, validate_orientation_word
from .difference import VerificationReport, directed_witness
from .errors import BudgetError
from .permutations import (
    PermutationFamily,
    fibonacci,
    lambda_mu,
    loose_subsets,
    sigma_from_loose,
)

TernaryWord = str
GADGET_ALPHABET = "abc"

# gadget_power_clique materializes all 3^n words; refuse beyond this n.
GADGET_POWER_LIMIT = 12

# has_spanning_transitive_order runs a 2^size subset DP.
TRANSITIVE_ORDER_SIZE_LIMIT = 10


def alternating_family(n: int) -> PermutationFamily:
    """Swap products of all loose subsets of [n-1]; exactly fibonacci(n) members.

    Pairwise different on the alternating path in the symmetric sense.
    """
    members = [sigma_from_loose(F, n) for F in loose_subsets(n)]
    return PermutationFamily(n, members, provenance=f"alternating-family n={n}")


def thrupath_family(n: int) -> PermutationFamily:
    """Largest (cardinality, element-sum) class of loose subsets, as swap products.

    Grouping the loose subsets of [n-1] by the pair (|F|, sum F) yields fewer
    than n^3 classes, so the largest has at least f(n)/n^3 members; within one
    class the swap products are pairwise different on the thrupath. Ties are
    broken by the smallest (cardinality, sum) key.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    groups: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for F in loose_subsets(n):
        groups.setdefault(lambda_mu(F), []).append(F)
    key, best = min(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    members = [sigma_from_loose(F, n) for F in best]
    return PermutationFamily(
        n, members, provenance=f"thrupath-family n={n} class={key}"
    )


def robust_family(n: int) -> PermutationFamily:
    """Swap products of all subsets of the odd elements of [n-1]; 2^floor(n/2) members.

    Odd elements are automatically loose. Pairwise robustly different on the
    symmetric path.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    odds = tuple(range(1, n, 2))
    members = [
        sigma_from_loose(combo, n)
        for k in range(len(odds) + 1)
        for combo in itertools.combinations(odds, k)
    ]
    return PermutationFamily(n, members, provenance=f"robust-family n={n}")


def ternary_witness(x: TernaryWord, y: TernaryWord) -> int | None:
    """Smallest coordinate whose letter pair is an arc of the block gadget.

    The gadget has every arc between distinct letters except (b, a).
    """
    for i, (a, b) in enumerate(zip(x, y)):
        if a != b and not (a == "b" and b == "a"):
            return i + 1
    return None


def gadget_power_clique(n: int, limit: int = GADGET_POWER_LIMIT) -> list[TernaryWord]:
    """A large symmetric clique in the n-fold conormal power of the block gadget.

    Words over {a, b, c} are grouped by the invariant #a - #b; any two words in
    one class carry witnesses in both directions, and the largest of the 2n+1
    classes has at least 3^n/(2n+1) words. Ties go to the class nearest 0.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > limit:
        raise BudgetError(f"n={n} exceeds the word-length limit of {limit}")
    buckets: dict[int, list[TernaryWord]] = {}
    for letters in itertools.product(GADGET_ALPHABET, repeat=n):
        word = "".join(letters)
        d = word.count("a") - word.count("b")
        buckets.setdefault(d, []).append(word)
    _, words = min(buckets.items(), key=lambda kv: (-len(kv[1]), abs(kv[0]), kv[0]))
    return words


def verify_ternary_clique(words: list[TernaryWord]) -> VerificationReport:
    """Both-direction witness check for every word pair; mirrors verify_family."""
    if not words:
        raise ValueError("cannot verify an empty word set")
    checked = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            checked += 1
            forward = ternary_witness(words[i], words[j]) is not None
            backward = ternary_witness(words[j], words[i]) is not None
            if not (forward and backward):
                missing = (
                    "both"
                    if not forward and not backward
                    else ("forward" if not forward else "backward")
                )
                return VerificationReport(False, checked, (i + 1, j + 1, missing))
    return VerificationReport(True, checked, None)


@dataclass(frozen=True)
class GadgetTriple:
    """The three permutations of one 3-element block {3t+1, 3t+2, 3t+3}.

    c_perm is always the identity arrangement; a_perm and b_perm swap roles
    depending on how the two block-internal path edges are oriented.
    """

    block_index: int
    c_perm: tuple[int, int, int]
    a_perm: tuple[int, int, int]
    b_perm: tuple[int, int, int]


def block_gadgets(word: str, blocks: int) -> list[GadgetTriple]:
    """Per-block gadget triples for an oriented path covering [3*blocks].

    When both internal edges of a block point upward, the letter a maps to the
    arrangement swapping the two larger elements and b to the one swapping the
    two smaller; in every other case the two roles are exchanged.
    """
    validate_orientation_word(word)
    if blocks < 1:
        raise ValueError(f"blocks must be positive, got {blocks}")
    if len(word) < 3 * blocks - 1:
        raise ValueError(
            f"word of length {len(word)} covers [{len(word) + 1}], need [{3 * blocks}]"
        )
    triples = []
    for t in range(blocks):
        base = 3 * t
        c_perm = (base + 1, base + 2, base + 3)
        swap_high = (base + 1, base + 3, base + 2)
        swap_low = (base + 2, base + 1, base + 3)
        if word[base] == "U" and word[base + 1] == "U":
            a_perm, b_perm = swap_high, swap_low
        else:
            a_perm, b_perm = swap_low, swap_high
        triples.append(GadgetTriple(t, c_perm, a_perm, b_perm))
    return triples


def block_embedding_family(
    word: str, n_blocks: int, clique_limit: int = GADGET_POWER_LIMIT
) -> PermutationFamily:
    """Permutations of [3*n_blocks] realizing the ternary clique blockwise.

    Each clique word picks one gadget arrangement per block; concatenating them
    gives a family pairwise different on the oriented path in the symmetric
    sense, of size at least 3^n_blocks/(2*n_blocks + 1).
    """
    triples = block_gadgets(word, n_blocks)
    members = []
    for w in gadget_power_clique(n_blocks, limit=clique_limit):
        images: list[int] = []
        for triple, letter in zip(triples, w):
            arrangement = {
                "a": triple.a_perm,
                "b": triple.b_perm,
                "c": triple.c_perm,
            }[letter]
            images.extend(arrangement)
        members.append(tuple(images))
    return PermutationFamily(
        3 * n_blocks,
        members,
        provenance=f"block-embedding word={word} blocks={n_blocks}",
    )


def five_permutation_gadget(word: str) -> PermutationFamily:
    """The five swap products of the loose subsets of [3], as a gadget on [4].

    The member set does not depend on the orientation word; only the difference
    digraph it induces does. The word is required to cover [4] so the gadget is
    only requested where it applies.
    """
    validate_orientation_word(word)
    if len(word) < 3:
        raise ValueError(f"word of length {len(word)} covers [{len(word) + 1}], need [4]")
    members = [sigma_from_loose(F, 4) for F in loose_subsets(4)]
    return PermutationFamily(4, members, provenance=f"five-gadget word={word[:3]}")


def has_spanning_transitive_order(
    family: PermutationFamily,
    spec: DigraphSpec,
    size_limit: int = TRANSITIVE_ORDER_SIZE_LIMIT,
) -> list[tuple[int, ...]] | None:
    """An ordering of the family with a directed witness from every earlier
    member to every later one, or None when no such ordering exists.

    Subset DP over 2^size states: the head of any valid ordering must reach
    every other remaining member, and the tail must itself be orderable.
    """
    k = len(family)
    if k == 0:
        raise ValueError("cannot order an empty family")
    if k > size_limit:
        raise BudgetError(f"family of size {k} exceeds the ordering limit {size_limit}")
    members = family.members
    reach = [
        sum(
            1 << j
            for j in range(k)
            if j != i and directed_witness(members[i], members[j], spec) is not None
        )
        for i in range(k)
    ]
    full = (1 << k) - 1
    head: dict[int, int] = {}

    def solvable(subset: int) -> bool:
        if subset == 0:
            return True
        if subset in head:
            return head[subset] >= 0
        remaining = subset
        while remaining:
            low = remaining & -remaining
            v = low.bit_length() - 1
            remaining &= remaining - 1
            rest = subset & ~low
            if rest & ~reach[v]:
                continue
            if solvable(rest):
                head[subset] = v
                return True
        head[subset] = -1
        return False

    if not solvable(full):
        return None
    ordering = []
    subset = full
    while subset:
        v = head[subset]
        ordering.append(members[v])
        subset &= ~(1 << v)
    return ordering


def pigeonhole_bound(n: int) -> float:
    """Lower bound 3^n / (2n + 1) for the gadget power clique size."""
    return 3**n / (2 * n + 1)


def thrupath_bound(n: int) -> int:
    """Integer lower bound ceil(f(n)/n^3) for the thrupath family size."""
    return ceil(fibonacci(n) / n**3)
