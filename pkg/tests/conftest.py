"""Shared helpers: independent oracles used to validate the library."""

from itertools import combinations

from unisamp import IndexSet


def all_subsets(n):
    """Every subset of [0:n-1] as a sorted tuple, empty set included."""
    for mask in range(1 << n):
        yield tuple(i for i in range(n) if mask >> i & 1)


def subsets_of_size(n, d):
    return combinations(range(n), d)


def exact_pairwise_valuation(elements, p):
    """p-adic valuation of prod_{i<j} (m_j - m_i), by exact integers.

    Independent oracle for the histogram-based valuation formula; only
    usable at small cardinalities before the product explodes.
    """
    val = 0
    elems = sorted(elements)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            diff = elems[j] - elems[i]
            while diff % p == 0:
                val += 1
                diff //= p
    return val


def dihedral_orbit_count(n, d):
    """Brute-force count of rotation/reflection classes of d-subsets."""
    seen = set()
    for combo in combinations(range(n), d):
        orbit_min = None
        for reflect in (False, True):
            base = tuple(-e % n for e in combo) if reflect else combo
            for t in range(n):
                img = tuple(sorted((e - t) % n for e in base))
                if orbit_min is None or img < orbit_min:
                    orbit_min = img
        seen.add(orbit_min)
    return len(seen)


def iset(n, elements):
    return IndexSet.of(n, elements)
