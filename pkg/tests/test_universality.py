import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unisamp import (
    IndexSet,
    InfeasibleSizeError,
    NotUniversalError,
    PrimePowerModulus,
    act,
    decompose,
    is_universal,
    is_universal_via_chi_star,
    is_universal_via_dispersion,
    maximal_universal,
    minimal_universal,
    residue_histogram,
    schur_valuation,
    universal_subset_of_size,
)
from conftest import all_subsets, exact_pairwise_valuation

M8 = PrimePowerModulus(2, 3)
M9 = PrimePowerModulus(3, 2)
M16 = PrimePowerModulus(2, 4)
M32 = PrimePowerModulus(2, 5)


def iset(n, elems):
    return IndexSet.of(n, elems)


class TestVerdicts:
    def test_universal_fixture(self):
        assert is_universal(iset(8, [0, 1, 3, 4, 6]), M8).is_universal

    def test_non_universal_fixture_with_witness(self):
        v = is_universal(iset(8, [0, 1, 4, 5]), M8)
        assert not v.is_universal
        assert v.witness == (2, 2, 0)
        assert v.to_json() == {
            "universal": False,
            "witness": {"k": 2, "a": 2, "b": 0},
        }

    def test_nine_fixture(self):
        assert not is_universal_via_chi_star(iset(9, [0, 1, 2, 3, 6]), M9)

    @pytest.mark.parametrize("modulus", [M8, M9, M16])
    def test_consecutive_blocks_universal(self, modulus):
        for d in range(modulus.n + 1):
            assert is_universal(iset(modulus.n, range(d)), modulus).is_universal

    def test_empty_set_universal(self):
        assert is_universal_via_chi_star(iset(8, []), M8)
        assert is_universal(iset(8, []), M8).is_universal

    def test_full_set_dispersion(self):
        assert is_universal_via_dispersion(IndexSet.full(8), M8)

    @pytest.mark.parametrize("modulus", [M8, M9])
    def test_witness_recomputes(self, modulus):
        """Any reported witness must name classes whose counts really
        differ by at least 2 at that level."""
        n = modulus.n
        for elems in all_subsets(n):
            v = is_universal(iset(n, elems), modulus)
            if v.is_universal:
                assert v.witness is None
                continue
            k, a, b = v.witness
            row = residue_histogram(iset(n, elems), modulus).counts[k]
            assert row[b] - row[a] >= 2

    @pytest.mark.parametrize("modulus", [M8, M9])
    def test_criteria_agree_exhaustively(self, modulus):
        n = modulus.n
        for elems in all_subsets(n):
            s = iset(n, elems)
            a = is_universal(s, modulus).is_universal
            assert a == is_universal_via_chi_star(s, modulus)
            assert a == is_universal_via_dispersion(s, modulus)

    @given(st.data())
    @settings(max_examples=100)
    def test_bracelet_and_complement_closure(self, data):
        modulus = data.draw(st.sampled_from([M8, M9, M16]))
        n = modulus.n
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1))))
        verdict = is_universal(s, modulus).is_universal
        t = data.draw(st.integers(0, n - 1))
        reflect = data.draw(st.booleans())
        assert is_universal(act(s, t, reflect), modulus).is_universal == verdict
        assert is_universal(s.complement(), modulus).is_universal == verdict

    @given(st.data())
    @settings(max_examples=100)
    def test_universal_count_bounds(self, data):
        """Universal sets have near-uniform class counts at every level."""
        modulus = data.draw(st.sampled_from([M8, M9, M16]))
        n = modulus.n
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
        if not is_universal(s, modulus).is_universal:
            return
        d = len(s)
        hist = residue_histogram(s, modulus)
        for k in range(modulus.m + 1):
            pk = modulus.p ** k
            for c in hist.counts[k]:
                assert d // pk <= c <= -(-d // pk)


class TestSchurValuation:
    @pytest.mark.parametrize("modulus", [M8, M9, M16, PrimePowerModulus(3, 3)])
    def test_matches_exact_product(self, modulus):
        """Histogram formula vs direct factorization of the product of
        pairwise differences."""
        import random

        rng = random.Random(20240817)
        n = modulus.n
        for _ in range(200):
            d = rng.randint(1, min(n, 9))
            elems = rng.sample(range(n), d)
            sv = schur_valuation(iset(n, elems), modulus)
            assert sv.valuation_numerator == exact_pairwise_valuation(
                elems, modulus.p
            )
            assert sv.valuation_denominator == exact_pairwise_valuation(
                range(d), modulus.p
            )

    def test_block_is_coprime(self):
        sv = schur_valuation(iset(16, range(6)), M16)
        assert sv.coprime

    def test_worked_example_coprime(self):
        assert schur_valuation(iset(8, [0, 1, 3, 4, 6]), M8).coprime

    def test_prime_modulus_always_coprime(self):
        m7 = PrimePowerModulus(7, 1)
        for elems in all_subsets(7):
            if elems:
                assert schur_valuation(iset(7, elems), m7).coprime

    @pytest.mark.parametrize("modulus", [M8, M9])
    def test_coprime_implies_universal(self, modulus):
        n = modulus.n
        for elems in all_subsets(n):
            if not elems:
                continue
            if schur_valuation(iset(n, elems), modulus).coprime:
                assert is_universal(iset(n, elems), modulus).is_universal

    def test_numerator_at_least_denominator(self):
        # the ratio of the two products is an integer
        import random

        rng = random.Random(7)
        for _ in range(200):
            d = rng.randint(1, 10)
            elems = rng.sample(range(16), d)
            sv = schur_valuation(iset(16, elems), M16)
            assert sv.valuation_numerator >= sv.valuation_denominator

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            schur_valuation(iset(8, []), M8)


class TestMaximal:
    def test_worked_fixture(self):
        r = maximal_universal(
            iset(32, [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 15]), M32
        )
        assert r.size == 7
        assert r.example.elements == (0, 1, 2, 3, 4, 6, 7)
        assert r.decomposition.k_sequence == (2, 1, 0)

    def test_nine_fixture(self):
        r = maximal_universal(iset(9, [0, 1, 2, 3, 6]), M9)
        assert r.size == 4
        assert r.example.elements in {(0, 1, 2, 3), (0, 1, 2, 6)}

    def test_empty_input(self):
        r = maximal_universal(iset(8, []), M8)
        assert r.size == 0 and len(r.example) == 0

    @pytest.mark.parametrize("modulus", [M8, M9])
    def test_universal_input_returned_whole(self, modulus):
        n = modulus.n
        for elems in all_subsets(n):
            s = iset(n, elems)
            if is_universal(s, modulus).is_universal:
                r = maximal_universal(s, modulus)
                assert r.example == s and r.size == len(s)

    @given(st.data())
    @settings(max_examples=150)
    def test_example_universal_and_contained(self, data):
        modulus = data.draw(st.sampled_from([M8, M9, M16, M32]))
        n = modulus.n
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
        r = maximal_universal(s, modulus)
        assert set(r.example).issubset(set(s))
        assert is_universal(r.example, modulus).is_universal
        assert r.size == len(r.example)

    @given(st.data())
    @settings(max_examples=150)
    def test_size_bracketed_by_full_levels(self, data):
        """p^kbar <= size < p^(kbar+1), kbar the deepest level with no
        empty class; and size is at most the number of nonempty classes
        at the shallowest level with an empty class."""
        modulus = data.draw(st.sampled_from([M8, M9, M16, M32]))
        n, p = modulus.n, modulus.p
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
        size = maximal_universal(s, modulus).size
        hist = residue_histogram(s, modulus)
        full = [k for k in range(modulus.m + 1) if min(hist.counts[k]) > 0]
        kbar = max(full)
        assert p ** kbar <= size < p ** (kbar + 1)
        deficient = [k for k in range(modulus.m + 1) if min(hist.counts[k]) == 0]
        if deficient:
            klow = min(deficient)
            assert size <= sum(1 for c in hist.counts[klow] if c > 0)

    @given(st.data())
    @settings(max_examples=150)
    def test_minimal_maximal_duality(self, data):
        modulus = data.draw(st.sampled_from([M8, M9, M16]))
        n = modulus.n
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1))))
        assert (
            minimal_universal(s, modulus).size
            + maximal_universal(s.complement(), modulus).size
            == n
        )


class TestPrescribedSize:
    def test_nine_full_set_seven(self):
        got = universal_subset_of_size(IndexSet.full(9), M9, 7)
        assert len(got) == 7
        assert is_universal(got, M9).is_universal

    def test_matches_maximal_at_cap(self):
        s = iset(32, [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 15])
        r = maximal_universal(s, M32)
        assert universal_subset_of_size(s, M32, r.size) == r.example

    def test_size_five_from_worked_set(self):
        s = iset(32, [0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 15])
        got = universal_subset_of_size(s, M32, 5)
        assert len(got) == 5
        assert is_universal(got, M32).is_universal

    def test_infeasible_names_cap(self):
        s = iset(8, [0, 2, 4, 6])
        with pytest.raises(InfeasibleSizeError) as exc:
            universal_subset_of_size(s, M8, 3)
        assert exc.value.maximal == maximal_universal(s, M8).size

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            universal_subset_of_size(iset(8, [0, 1]), M8, 3)

    @given(st.data())
    @settings(max_examples=150, deadline=None)
    def test_every_feasible_size_works(self, data):
        modulus = data.draw(st.sampled_from([M8, M9, M16]))
        n = modulus.n
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
        cap = maximal_universal(s, modulus).size
        for d in range(1, cap + 1):
            got = universal_subset_of_size(s, modulus, d)
            assert len(got) == d
            assert set(got).issubset(set(s))
            assert is_universal(got, modulus).is_universal


class TestMinimal:
    def test_universal_input_unchanged(self):
        s = iset(8, [0, 1, 3, 4, 6])
        r = minimal_universal(s, M8)
        assert r.size == 5 and r.example == s

    def test_full_set(self):
        r = minimal_universal(IndexSet.full(9), M9)
        assert r.size == 9

    def test_nine_fixture(self):
        s = iset(9, [0, 1, 2, 3, 6])
        comp_omega = maximal_universal(s.complement(), M9).size
        r = minimal_universal(s, M9)
        assert r.size == 9 - comp_omega

    @given(st.data())
    @settings(max_examples=150)
    def test_example_contains_input_and_is_universal(self, data):
        modulus = data.draw(st.sampled_from([M8, M9, M16, M32]))
        n = modulus.n
        s = iset(n, data.draw(st.sets(st.integers(0, n - 1))))
        r = minimal_universal(s, modulus)
        assert set(s).issubset(set(r.example))
        assert is_universal(r.example, modulus).is_universal
        assert r.size == len(r.example)


class TestDecompose:
    def test_non_universal_fails_with_witness(self):
        with pytest.raises(NotUniversalError) as exc:
            decompose(iset(8, [0, 1, 4, 5]), M8)
        assert exc.value.verdict.witness == (2, 2, 0)

    def test_elementary_set_single_piece(self):
        s = iset(8, [1, 2, 4, 7])  # one per class mod 4
        d = decompose(s, M8)
        assert d.k_sequence == (2,)
        assert d.pieces[0][1] == s

    def test_worked_example_structure(self):
        d = decompose(iset(8, [0, 1, 3, 4, 6]), M8)
        assert d.k_sequence == (2, 0)
        assert len(d.pieces[0][1]) == 4 and len(d.pieces[1][1]) == 1

    @pytest.mark.parametrize("modulus", [M8, M9])
    def test_invariants_for_every_universal_set(self, modulus):
        n, p = modulus.n, modulus.p
        for elems in all_subsets(n):
            if not elems:
                continue
            s = iset(n, elems)
            if not is_universal(s, modulus).is_universal:
                continue
            dec = decompose(s, modulus)
            ks = dec.k_sequence
            # levels nonincreasing, each repeated at most p-1 times,
            # matching the base-p digits of the cardinality
            assert list(ks) == sorted(ks, reverse=True)
            for k in set(ks):
                assert ks.count(k) <= p - 1
            assert sum(p ** k for k in ks) == len(s)
            seen: set = set()
            shadows: list = []
            for k, piece in dec.pieces:
                assert len(piece) == p ** k
                counts = residue_histogram(piece, modulus).counts[k]
                assert set(counts) == {1}
                assert not (set(piece) & seen)
                for prev_k, prev_shadow in shadows:
                    assert not any(
                        e % (p ** (prev_k + 1)) in prev_shadow for e in piece
                    )
                seen |= set(piece)
                shadows.append(
                    (k, {e % (p ** (k + 1)) for e in piece})
                )
            assert seen == set(s)
