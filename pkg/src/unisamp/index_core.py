"""Residue arithmetic on index sets in Z_N for N = p^M.

Provides the domain types shared by the rest of the package (prime-power
moduli, index sets, per-level residue histograms) together with digit
reversal, block-dispersion counts, the dihedral group action, and
black-and-white bracelet canonicalization / counting.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


def is_prime(n: int) -> bool:
    """Primality by trial division; fine at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimePowerModulus:
    """Ambient size N = p^M with p prime and M >= 1."""

    p: int
    m: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.m < 1:
            raise ValueError(f"exponent must be >= 1, got {self.m}")

    @property
    def n(self) -> int:
        return self.p ** self.m

    @classmethod
    def from_n(cls, n: int) -> "PrimePowerModulus":
        """Factor n as p^M, or raise ValueError if n is not a prime power."""
        if n < 2:
            raise ValueError(f"N must be >= 2, got {n}")
        for p in range(2, n + 1):
            if p * p > n:
                break
            if n % p == 0:
                m = 0
                rest = n
                while rest % p == 0:
                    rest //= p
                    m += 1
                if rest != 1:
                    raise ValueError(
                        f"N = {n} is not a prime power; "
                        "only the brute-force rank oracle applies"
                    )
                return cls(p, m)
        return cls(n, 1)  # n itself is prime


@dataclass(frozen=True)
class IndexSet:
    """A set of distinct residues in [0:N-1], stored sorted."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ambient size must be >= 1, got {self.n}")
        prev = -1
        for e in self.elements:
            if not 0 <= e < self.n:
                raise ValueError(f"element {e} outside [0:{self.n - 1}]")
            if e <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = e

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "IndexSet":
        """Build from any iterable; sorts and rejects duplicates."""
        elems = sorted(elements)
        return cls(n, tuple(elems))

    @classmethod
    def full(cls, n: int) -> "IndexSet":
        return cls(n, tuple(range(n)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def complement(self) -> "IndexSet":
        inside = set(self.elements)
        return IndexSet(self.n, tuple(x for x in range(self.n) if x not in inside))

    def mask(self) -> int:
        """Bitmask encoding, bit i set iff i is an element."""
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "IndexSet":
        return cls(n, tuple(i for i in range(n) if mask >> i & 1))

    def to_json(self) -> dict:
        return {"n": self.n, "indices": list(self.elements)}

    @classmethod
    def from_json(cls, obj: dict) -> "IndexSet":
        try:
            n = int(obj["n"])
            indices = [int(i) for i in obj["indices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad index set JSON (need 'n' and 'indices'): {exc}")
        return cls.of(n, indices)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class ResidueHistogram:
    """Per-level residue multiplicities of an index set.

    counts[k][a] is the number of elements congruent to a mod p^k, for
    0 <= k <= M. Level 0 is the single total; the weight of every node
    in the congruence tree equals the sum of its children's weights.
    """

    modulus: PrimePowerModulus
    counts: tuple[tuple[int, ...], ...]

    def level(self, k: int) -> tuple[int, ...]:
        return self.counts[k]

    @property
    def cardinality(self) -> int:
        return self.counts[0][0]

    def spread_ok(self) -> bool:
        """True when max - min <= 1 at every level."""
        for row in self.counts:
            if max(row) - min(row) > 1:
                return False
        return True


def residue_histogram(index_set: IndexSet, modulus: PrimePowerModulus) -> ResidueHistogram:
    """Count elements of the set in each congruence class mod p^k, all k <= M."""
    if index_set.n != modulus.n:
        raise ValueError(
            f"index set lives in Z_{index_set.n}, modulus is {modulus.n}"
        )
    p, m = modulus.p, modulus.m
    levels = []
    for k in range(m + 1):
        pk = p ** k
        row = [0] * pk
        for e in index_set.elements:
            row[e % pk] += 1
        levels.append(tuple(row))
    return ResidueHistogram(modulus, tuple(levels))


def chi_star(d: int, modulus: PrimePowerModulus) -> ResidueHistogram:
    """Residue histogram of the consecutive block [0:d-1].

    Closed form: floor((d-1-a)/p^k) + 1, clamped at zero.
    """
    if not 0 <= d <= modulus.n:
        raise ValueError(f"cardinality {d} outside [0:{modulus.n}]")
    p, m = modulus.p, modulus.m
    levels = []
    for k in range(m + 1):
        pk = p ** k
        row = tuple(max(0, (d - 1 - a) // pk + 1) for a in range(pk))
        levels.append(row)
    return ResidueHistogram(modulus, tuple(levels))


def digit_reverse(a: int, p: int, m: int) -> int:
    """Reverse the m base-p digits of a. Involution on [0:p^m-1]."""
    if not 0 <= a < p ** m:
        raise ValueError(f"{a} outside [0:{p ** m - 1}]")
    out = 0
    for _ in range(m):
        a, digit = divmod(a, p)
        out = out * p + digit
    return out


def dispersion(index_set: IndexSet, modulus: PrimePowerModulus) -> ResidueHistogram:
    """Block-occupancy counts: level k bins [0:N-1] into p^k blocks of
    length p^(M-k) and counts elements per block.

    Satisfies dispersion(reverse(I))[k][reverse_k(a)] == chi_k(a; I).
    """
    if index_set.n != modulus.n:
        raise ValueError(
            f"index set lives in Z_{index_set.n}, modulus is {modulus.n}"
        )
    p, m = modulus.p, modulus.m
    levels = []
    for k in range(m + 1):
        width = p ** (m - k)
        row = [0] * (p ** k)
        for e in index_set.elements:
            row[e // width] += 1
        levels.append(tuple(row))
    return ResidueHistogram(modulus, tuple(levels))


def act(index_set: IndexSet, t: int, reflect: bool = False) -> IndexSet:
    """Dihedral action: optionally negate mod N, then subtract t mod N."""
    n = index_set.n
    elems = index_set.elements
    if reflect:
        elems = tuple(-e % n for e in elems)
    return IndexSet.of(n, ((e - t) % n for e in elems))


@dataclass(frozen=True)
class BraceletClass:
    """Dihedral orbit of an index set, named by its least representative."""

    canonical: IndexSet
    orbit_size: int


def bracelet_canonical(index_set: IndexSet) -> BraceletClass:
    """Lexicographic minimum of the sorted element tuple over all 2N images."""
    n = index_set.n
    images = set()
    for reflect in (False, True):
        base = (
            tuple(-e % n for e in index_set.elements)
            if reflect
            else index_set.elements
        )
        for t in range(n):
            images.add(tuple(sorted((e - t) % n for e in base)))
    best = min(images)
    return BraceletClass(IndexSet(n, best), len(images))


def bracelet_count(n: int, d: int) -> int:
    """Number of black-and-white bracelets of length n with d black beads.

    Burnside form: the cyclic (rotation) term is
    (1/2n) * sum over k | gcd(n, d) of phi(k) * C(n/k, d/k), and the
    reflection term is half a single binomial depending on the parities
    of n and d.
    """
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    g = math.gcd(n, d) if d else n
    rot = sum(
        _totient(k) * math.comb(n // k, d // k)
        for k in range(1, g + 1)
        if g % k == 0
    )
    if n % 2 == 1:
        refl = math.comb((n - 1) // 2, d // 2)
    elif d % 2 == 0:
        refl = math.comb(n // 2, d // 2)
    else:
        refl = math.comb(n // 2 - 1, (d - 1) // 2)
    total = n * refl + rot
    assert total % (2 * n) == 0, "Burnside sum must divide evenly"
    return total // (2 * n)


@lru_cache(maxsize=None)
def _totient(k: int) -> int:
    return sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1)
