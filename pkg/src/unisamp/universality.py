"""Universality criteria and constructive algorithms.

A set I in Z_N (N = p^M) is universal when every square submatrix of the
DFT picked by I (rows) and any equally sized column set is invertible.
For prime powers this is equivalent to a purely combinatorial condition
on residue counts, which is what this module checks. It also builds
maximal universal subsets, minimal universal supersets, prescribed-size
universal subsets, and decompositions into elementary pieces.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

from .index_core import (
    IndexSet,
    PrimePowerModulus,
    ResidueHistogram,
    chi_star,
    digit_reverse,
    dispersion,
    residue_histogram,
)


@dataclass(frozen=True)
class UniversalityVerdict:
    is_universal: bool
    # witness: level k and residues (a, b) mod p^k with count(b) - count(a) >= 2
    witness: Optional[tuple[int, int, int]] = None

    def to_json(self) -> dict:
        out: dict = {"universal": self.is_universal}
        if self.witness is not None:
            k, a, b = self.witness
            out["witness"] = {"k": k, "a": a, "b": b}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class UniversalDecomposition:
    """Ordered elementary pieces (k_r, piece_r) with |piece_r| = p^{k_r}."""

    pieces: tuple[tuple[int, IndexSet], ...]

    @property
    def k_sequence(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.pieces)

    def union(self, n: int) -> IndexSet:
        elems: list[int] = []
        for _, piece in self.pieces:
            elems.extend(piece.elements)
        return IndexSet.of(n, elems)

    def to_json(self) -> dict:
        return {
            "pieces": [
                {"k": k, "indices": list(piece.elements)} for k, piece in self.pieces
            ]
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class SchurValuation:
    """p-adic valuations of the two products whose ratio decides the
    sufficient test: numerator over the set, denominator over the
    consecutive block of the same size."""

    valuation_numerator: int
    valuation_denominator: int

    @property
    def coprime(self) -> bool:
        return self.valuation_numerator == self.valuation_denominator


@dataclass(frozen=True)
class MaximalResult:
    size: int
    example: IndexSet
    decomposition: UniversalDecomposition


@dataclass(frozen=True)
class MinimalResult:
    size: int
    example: IndexSet


class NotUniversalError(ValueError):
    """Raised when an operation needs a universal set but got a
    non-universal one; carries the verdict with its witness."""

    def __init__(self, verdict: UniversalityVerdict):
        self.verdict = verdict
        k, a, b = verdict.witness  # type: ignore[misc]
        super().__init__(
            f"set is not universal: residue {a} mod p^{k} holds at least two "
            f"fewer elements than residue {b}"
        )


class InfeasibleSizeError(ValueError):
    """Requested universal-subset size exceeds what the input admits."""

    def __init__(self, requested: int, maximal: int):
        self.requested = requested
        self.maximal = maximal
        super().__init__(
            f"no universal subset of size {requested}: the largest universal "
            f"subset has size {maximal}"
        )


def is_universal(index_set: IndexSet, modulus: PrimePowerModulus) -> UniversalityVerdict:
    """Balanced-residue criterion: universal iff at every level k the
    class counts mod p^k differ by at most 1.

    The witness, when present, is the first (k, a, b) in ascending scan
    order with count(b) - count(a) >= 2.
    """
    hist = residue_histogram(index_set, modulus)
    return _verdict_from_histogram(hist)


def _verdict_from_histogram(hist: ResidueHistogram) -> UniversalityVerdict:
    for k, row in enumerate(hist.counts):
        if max(row) - min(row) <= 1:
            continue
        for a, ca in enumerate(row):
            for b, cb in enumerate(row):
                if cb - ca >= 2:
                    return UniversalityVerdict(False, (k, a, b))
    return UniversalityVerdict(True)


def is_universal_via_chi_star(index_set: IndexSet, modulus: PrimePowerModulus) -> bool:
    """Multiset criterion: level-k counts, as a multiset, must equal
    those of the consecutive block of the same cardinality."""
    hist = residue_histogram(index_set, modulus)
    star = chi_star(len(index_set), modulus)
    for row, row_star in zip(hist.counts, star.counts):
        if sorted(row) != sorted(row_star):
            return False
    return True


def is_universal_via_dispersion(index_set: IndexSet, modulus: PrimePowerModulus) -> bool:
    """Digit-reversal criterion: the digit-reversed image must be
    uniformly dispersed, i.e. its block-occupancy counts differ by at
    most 1 at every level."""
    p, m = modulus.p, modulus.m
    reversed_set = IndexSet.of(
        modulus.n, (digit_reverse(e, p, m) for e in index_set.elements)
    )
    return dispersion(reversed_set, modulus).spread_ok()


def _pair_sum(row: tuple[int, ...]) -> int:
    return sum(c * (c - 1) // 2 for c in row)


def schur_valuation(index_set: IndexSet, modulus: PrimePowerModulus) -> SchurValuation:
    """p-adic valuation of the product of pairwise differences, for the
    set and for the consecutive block of the same size.

    val_p(prod_{i<j}(m_j - m_i)) = sum over levels k >= 1 of
    sum_a C(count_k(a), 2): each pair congruent mod p^k contributes one
    factor of p per level it survives. The integers themselves are never
    formed; they overflow fast.
    """
    if len(index_set) == 0:
        raise ValueError("valuation of an empty product is undefined here")
    hist = residue_histogram(index_set, modulus)
    star = chi_star(len(index_set), modulus)
    num = sum(_pair_sum(hist.counts[k]) for k in range(1, modulus.m + 1))
    den = sum(_pair_sum(star.counts[k]) for k in range(1, modulus.m + 1))
    # pairs still congruent mod p^M contribute further powers: differences
    # are less than p^M in magnitude only for distinct residues, but two
    # elements can never share a class mod p^M, so the sums stop at M.
    return SchurValuation(num, den)


def _largest_full_level(elements: set[int], modulus: PrimePowerModulus) -> int:
    """Largest k such that every class mod p^k meets the set."""
    p = modulus.p
    k = 0
    for k_try in range(1, modulus.m + 1):
        pk = p ** k_try
        seen = {e % pk for e in elements}
        if len(seen) < pk:
            break
        k = k_try
    return k


def _extract_piece(elements: set[int], k: int, modulus: PrimePowerModulus) -> tuple[IndexSet, set[int]]:
    """Pull out one elementary piece at level k and drop its shadow.

    The piece takes the smallest element of each class mod p^k. Every
    remaining element congruent to a chosen one mod p^{k+1} is removed
    along with it, which is what keeps later pieces separated.
    """
    p = modulus.p
    pk = p ** k
    chosen: dict[int, int] = {}
    for e in sorted(elements):
        r = e % pk
        if r not in chosen:
            chosen[r] = e
    if len(chosen) < pk:
        raise LookupError(f"some class mod {pk} is empty")
    piece = IndexSet.of(modulus.n, chosen.values())
    pk1 = pk * p
    shadow = {e % pk1 for e in chosen.values()}
    remaining = {e for e in elements if e % pk1 not in shadow}
    return piece, remaining


def maximal_universal(index_set: IndexSet, modulus: PrimePowerModulus) -> MaximalResult:
    """Greedy extraction of a largest universal subset.

    Repeatedly finds the deepest level whose classes are all occupied,
    strips an elementary piece there, and discards everything sharing a
    class one level deeper with the piece. The union of the pieces is a
    maximum-cardinality universal subset.
    """
    if index_set.n != modulus.n:
        raise ValueError(
            f"index set lives in Z_{index_set.n}, modulus is {modulus.n}"
        )
    remaining = set(index_set.elements)
    pieces: list[tuple[int, IndexSet]] = []
    while remaining:
        k = _largest_full_level(remaining, modulus)
        piece, remaining = _extract_piece(remaining, k, modulus)
        pieces.append((k, piece))
    decomposition = UniversalDecomposition(tuple(pieces))
    example = decomposition.union(modulus.n)
    return MaximalResult(len(example), example, decomposition)


def universal_subset_of_size(
    index_set: IndexSet, modulus: PrimePowerModulus, d: int
) -> IndexSet:
    """Universal subset of cardinality exactly d, when one exists.

    The piece sizes are dictated by the base-p digits of d (a digit
    alpha at place k yields alpha pieces at level k, taken in
    nonincreasing level order); extraction then proceeds as in
    maximal_universal but with the prescribed levels.
    """
    if not 1 <= d <= len(index_set):
        raise ValueError(f"target size {d} outside [1:{len(index_set)}]")
    cap = maximal_universal(index_set, modulus).size
    if d > cap:
        raise InfeasibleSizeError(d, cap)
    p = modulus.p
    levels: list[int] = []
    rest, k = d, 0
    while rest:
        rest, digit = divmod(rest, p)
        levels.extend([k] * digit)
        k += 1
    levels.reverse()
    remaining = set(index_set.elements)
    collected: list[int] = []
    for k in levels:
        # feasibility of every step after the first is not proved in
        # general; surface a failure loudly rather than silently
        # returning a short set
        try:
            piece, remaining = _extract_piece(remaining, k, modulus)
        except LookupError as exc:
            raise InfeasibleSizeError(d, cap) from exc
        collected.extend(piece.elements)
    result = IndexSet.of(modulus.n, collected)
    assert len(result) == d
    return result


def minimal_universal(index_set: IndexSet, modulus: PrimePowerModulus) -> MinimalResult:
    """Smallest universal superset, by complement duality: drop a
    maximal universal subset from the complement and take what is left."""
    comp = index_set.complement()
    omega = maximal_universal(comp, modulus)
    example = omega.example.complement()
    return MinimalResult(modulus.n - omega.size, example)


def decompose(index_set: IndexSet, modulus: PrimePowerModulus) -> UniversalDecomposition:
    """Split a universal set into separated elementary pieces.

    Fails (NotUniversalError with witness) on non-universal input; a
    universal set is consumed exactly by the greedy extraction.
    """
    verdict = is_universal(index_set, modulus)
    if not verdict.is_universal:
        raise NotUniversalError(verdict)
    result = maximal_universal(index_set, modulus)
    assert result.size == len(index_set)
    return result.decomposition
