"""Language specs: parsing, membership oracles, slice enumeration."""

import numpy as np
import pytest

from rangesynth.languages import (
    BudgetError,
    Cycles,
    Dfa,
    EncodingError,
    ExactCount,
    LanguageError,
    Nfa,
    Regular,
    Threshold,
    UnReach,
    USTConn,
    determinize,
    enumerate_slice,
    member,
    member_batch,
    parse_dfa,
    sample_members,
    words_to_strings,
)
from tests.conftest import NFA1_TXT, PARITY_TXT


class TestParseDfa:
    def test_parity_is_dfa(self):
        a = parse_dfa(PARITY_TXT)
        assert isinstance(a, Dfa)
        assert a.num_states == 2

    def test_out_of_range_state(self):
        with pytest.raises(LanguageError):
            parse_dfa("states 2\nstart 0\nfinal 0\ntrans 0 0 5\n")

    def test_duplicate_transition_gives_nfa(self):
        a = parse_dfa(NFA1_TXT)
        assert isinstance(a, Nfa)

    def test_missing_transition_rejected(self):
        with pytest.raises(LanguageError):
            parse_dfa("states 2\nstart 0\nfinal 0\ntrans 0 0 0\ntrans 0 1 1\n")

    def test_determinize_agrees(self):
        a = parse_dfa(NFA1_TXT)
        d = determinize(a)
        for n in range(1, 7):
            for w in range(1 << n):
                bits = [(w >> i) & 1 for i in range(n)]
                assert a.accepts(bits) == d.accepts(bits)


class TestMember:
    def test_cycles_empty_graph(self):
        assert member(Cycles(), [0] * 16) == 1

    def test_cycles_single_edge(self):
        m = np.zeros((4, 4), dtype=np.uint8)
        m[0, 1] = m[1, 0] = 1
        assert member(Cycles(), m.reshape(-1)) == 0

    def test_threshold(self):
        assert member(Threshold(2), [0, 1, 1, 0]) == 1
        assert member(Threshold(2), [0, 1, 0, 0]) == 0

    def test_asymmetric_matrix_rejected(self):
        m = np.zeros((3, 3), dtype=np.uint8)
        m[0, 1] = 1
        with pytest.raises(EncodingError):
            member(Cycles(), m.reshape(-1))

    def test_unreach(self):
        # edge 1->3 present: path exists, not in language
        m = np.zeros((3, 3), dtype=np.uint8)
        m[0, 2] = 1
        assert member(UnReach(), m.reshape(-1)) == 0
        assert member(UnReach(), np.zeros(9, dtype=np.uint8)) == 1

    def test_member_batch_matches_member(self, parity):
        specs = [Regular(parity), Threshold(2), ExactCount(1)]
        rng = np.random.default_rng(0)
        words = rng.integers(0, 2, (200, 5), dtype=np.uint8)
        for spec in specs:
            batch = member_batch(spec, words)
            assert list(batch) == [member(spec, w) for w in words]

    def test_ustconn_monotone_under_edges(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = 5
            m = np.zeros((n, n), dtype=np.uint8)
            for i in range(n):
                for j in range(i + 1, n):
                    m[i, j] = m[j, i] = rng.integers(0, 2)
            before = member(USTConn(), m.reshape(-1))
            i, j = sorted(rng.choice(n, size=2, replace=False))
            m[i, j] = m[j, i] = 1
            after = member(USTConn(), m.reshape(-1))
            assert after >= before


class TestEnumerate:
    def test_exact_count(self):
        got = words_to_strings(enumerate_slice(ExactCount(1), 3))
        assert got == ["001", "010", "100"]

    def test_parity(self, parity):
        got = words_to_strings(enumerate_slice(Regular(parity), 2))
        assert got == ["00", "11"]

    def test_cycles_count_matches_degree_filter(self):
        got = enumerate_slice(Cycles(), 16)  # 4 vertices
        # even-degree graphs on 4 vertices = 2^C(3,2) = 8 (cycle space dim 3)
        assert len(got) == 8
        for w in got:
            assert member(Cycles(), w)

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            enumerate_slice(Threshold(1), 40)

    def test_member_iff_enumerated(self, th2):
        spec = Regular(th2)
        got = {bytes(w) for w in enumerate_slice(spec, 5)}
        for w in range(1 << 5):
            bits = bytes((w >> i) & 1 for i in range(5))
            assert (bits in got) == bool(member(spec, list(bits)))


class TestSampleMembers:
    def test_counting_direct_sampler(self):
        words = sample_members(Threshold(3), 10, 50, seed=1)
        assert words.shape == (50, 10)
        assert (words.sum(axis=1) >= 3).all()
        words = sample_members(ExactCount(4), 10, 50, seed=1)
        assert (words.sum(axis=1) == 4).all()

    def test_rejection_sampler(self, parity):
        words = sample_members(Regular(parity), 8, 30, seed=2)
        assert all(member(Regular(parity), w) for w in words)

    def test_deterministic_given_seed(self):
        a = sample_members(Threshold(2), 12, 20, seed=9)
        b = sample_members(Threshold(2), 12, 20, seed=9)
        assert np.array_equal(a, b)
