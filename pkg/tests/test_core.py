import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fam
from oracles import (
    as_sets,
    bfs_distance,
    consistent,
    smooth,
    union_closed_full,
    well_graded,
)
from learnspace import core
from learnspace.core import (
    DomainError,
    ItemDomain,
    NotInFamilyError,
    SetFamily,
    StateSet,
    is_accessible,
    is_knowledge_structure,
    is_learning_space,
    is_partial_knowledge_structure,
    is_partial_learning_space,
    is_union_closed,
    is_well_graded,
    satisfies_L1,
    satisfies_L2,
    sym_diff_distance,
    tight_path,
    union_close,
)

ABC = ItemDomain(("a", "b", "c"))


def families(max_items=4):
    return st.integers(2, max_items).flatmap(
        lambda n: st.sets(st.integers(0, (1 << n) - 1), min_size=1).map(
            lambda masks: SetFamily(ItemDomain(tuple("abcd"[:n])), tuple(masks))
        )
    )


class TestTypes:
    def test_domain_rejects_duplicates_and_oversize(self):
        with pytest.raises(DomainError):
            ItemDomain(("a", "a"))
        with pytest.raises(DomainError):
            ItemDomain(tuple(f"q{i}" for i in range(65)))
        assert len(ItemDomain(tuple(f"q{i}" for i in range(64)))) == 64

    def test_state_mask_must_fit(self):
        with pytest.raises(DomainError):
            StateSet(ABC, 0b1000)

    def test_family_is_canonical_and_deduplicated(self):
        F = SetFamily(ABC, (0b011, 0b100, 0, 0b100, 0b001))
        assert F.masks == (0, 0b001, 0b100, 0b011)

    def test_unknown_item(self):
        with pytest.raises(DomainError):
            ABC.state("z")


class TestDistance:
    def test_examples(self):
        assert sym_diff_distance(ABC.state("ab"), ABC.state("bc")) == 2
        assert sym_diff_distance(ABC.state("ab"), ABC.state("ab")) == 0
        assert sym_diff_distance(ABC.state(""), ABC.state("abc")) == 3

    def test_domain_mismatch(self):
        with pytest.raises(DomainError):
            sym_diff_distance(ABC.state("a"), ItemDomain(("a", "b")).state("a"))

    @given(st.integers(0, 7), st.integers(0, 7))
    def test_symmetric_zero_iff_equal(self, k, l):
        K, L = StateSet(ABC, k), StateSet(ABC, l)
        assert sym_diff_distance(K, L) == sym_diff_distance(L, K)
        assert (sym_diff_distance(K, L) == 0) == (k == l)


class TestStructures:
    def test_knowledge_structure(self, f_ex, l_ex):
        assert is_knowledge_structure(f_ex)
        assert not is_knowledge_structure(l_ex)
        assert not is_knowledge_structure(fam("abc", ""))

    def test_partial_knowledge_structure(self, l_ex):
        assert is_partial_knowledge_structure(fam("abc", ""))
        assert is_partial_knowledge_structure(l_ex)
        assert not is_partial_knowledge_structure(fam("ab", "a", "b"))

    def test_union_closed(self, f_ex, g_ex):
        assert is_union_closed(f_ex)
        assert not is_union_closed(g_ex)
        assert is_union_closed(fam("abc", ""))

    def test_accessible(self, f_ex):
        assert is_accessible(f_ex)
        assert not is_accessible(fam("ab", "", "ab"))
        assert is_accessible(fam("ab", ""))

    def test_accessible_scan_of_f_ex(self, f_ex):
        states = as_sets(f_ex)
        assert all(not K or any(K - {q} in states for q in K) for K in states)


class TestTightPath:
    def test_f_ex_example(self, f_ex):
        path = tight_path(f_ex, f_ex.state(""), f_ex.state("bd"))
        assert [s.names for s in path.steps] == [(), ("b",), ("b", "d")]

    def test_zero_length(self, f_ex):
        K = f_ex.state("abc")
        assert tight_path(f_ex, K, K).steps == (K,)

    def test_l_ex_has_none(self, l_ex):
        assert tight_path(l_ex, l_ex.state("abc"), l_ex.state("cde")) is None

    def test_endpoints_must_be_states(self, f_ex):
        with pytest.raises(NotInFamilyError):
            tight_path(f_ex, f_ex.state(""), f_ex.state("e"))

    @settings(max_examples=300)
    @given(families(), st.data())
    def test_interval_search_matches_unrestricted_bfs(self, F, data):
        K = data.draw(st.sampled_from(F.states))
        L = data.draw(st.sampled_from(F.states))
        path = tight_path(F, K, L)
        states = as_sets(F)
        dist = bfs_distance(states, frozenset(K.names), frozenset(L.names))
        assert (path is not None) == (dist == sym_diff_distance(K, L))
        if path is not None:
            assert len(path) == sym_diff_distance(K, L)
            assert path.steps[0] == K and path.steps[-1] == L
            for a, b in zip(path.steps, path.steps[1:]):
                assert sym_diff_distance(a, b) == 1
            assert all(s in F for s in path.steps)


class TestWellGraded:
    def test_examples(self, f_ex, l_ex):
        assert is_well_graded(f_ex)
        assert not is_well_graded(l_ex)
        assert is_well_graded(fam("abc", ""))

    @settings(max_examples=300)
    @given(families())
    def test_matches_permutation_oracle(self, F):
        assert is_well_graded(F) == well_graded(as_sets(F))

    @settings(max_examples=100)
    @given(families(3))
    def test_matches_all_pairs_tight_path(self, F):
        expected = all(tight_path(F, K, L) is not None for K in F.states for L in F.states)
        assert is_well_graded(F) == expected


class TestAxioms:
    def test_l1_examples(self, f_ex, l_ex):
        assert satisfies_L1(f_ex)
        assert not satisfies_L1(fam("ab", "", "ab"))
        # {c,d,e} ⊂ {a,b,c,d,e,f} but no single item extends {c,d,e} inside the family
        assert not satisfies_L1(l_ex)

    def test_l2_examples(self, f_ex, g_ex, l_ex):
        assert satisfies_L2(f_ex)
        assert satisfies_L2(l_ex)
        # ∅ ⊂ {b} and {c} is a state, but {b,c} is not
        assert not satisfies_L2(g_ex)
        assert satisfies_L2(g_ex) == consistent(as_sets(g_ex))

    @settings(max_examples=300)
    @given(families())
    def test_axioms_match_oracles(self, F):
        states = as_sets(F)
        assert satisfies_L1(F) == smooth(states)
        assert satisfies_L2(F) == consistent(states)

    def test_learning_space_examples(self, f_ex, g_ex, l_ex, k_ny):
        assert is_learning_space(f_ex)
        assert not is_learning_space(g_ex)
        assert not is_learning_space(l_ex)
        assert is_learning_space(k_ny)

    @settings(max_examples=300)
    @given(families())
    def test_both_routes_agree(self, F):
        assert is_learning_space(F, route="axioms") == is_learning_space(F, route="closure")

    def test_unknown_route(self, f_ex):
        with pytest.raises(ValueError):
            is_learning_space(f_ex, route="nope")

    def test_partial_learning_space(self, l_ex):
        assert is_partial_learning_space(fam("abc", ""))
        assert not is_partial_learning_space(fam("ab", "a", "b"))
        assert not is_partial_learning_space(l_ex)
        two_chains = fam("abc", "a", "ab", "c", "bc", "abc")
        assert is_partial_learning_space(two_chains)
        assert not is_union_closed(two_chains)

    def test_union_closed_wellgraded_is_partial_learning_space(self):
        # holds with or without ∅
        for F in (fam("abc", "a", "ab", "ac", "abc"), fam("abc", "", "a", "ab", "ac", "abc")):
            assert is_union_closed(F) and is_well_graded(F)
            assert is_partial_learning_space(F)


class TestUnionClose:
    def test_examples(self, f_ex):
        assert union_close(fam("ab", "", "a", "b")) == fam("ab", "", "a", "b", "ab")
        assert union_close(f_ex) == f_ex
        assert union_close(fam("ab", "")) == fam("ab", "")

    @settings(max_examples=200)
    @given(families())
    def test_idempotent_and_closed(self, F):
        C = union_close(F)
        assert is_union_closed(C)
        assert union_close(C) == C
        assert set(F.masks) <= set(C.masks)

    @settings(max_examples=200)
    @given(families(3))
    def test_pairwise_check_equals_full_closure(self, F):
        assert is_union_closed(F) == union_closed_full(as_sets(F))


def _union_closed_families(n):
    full = (1 << n) - 1
    domain = ItemDomain(tuple("abcd"[:n]))
    for pick in range(1 << full):
        masks = frozenset([full] + [m for m in range(full) if pick >> m & 1])
        if core.union_closed_masks(masks):
            yield SetFamily(domain, tuple(masks))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_nested_tight_paths_decide_wellgradedness_for_union_closed(n):
    count = 0
    for F in _union_closed_families(n):
        nested = all(
            tight_path(F, K, L) is not None for K in F.states for L in F.states if K < L
        )
        assert is_well_graded(F) == nested
        count += 1
    assert count > 0


def test_wellgraded_union_closed_with_union_has_both_axioms():
    for n in (2, 3):
        for F in _union_closed_families(n):
            if is_well_graded(F):
                assert satisfies_L1(F) and satisfies_L2(F)
