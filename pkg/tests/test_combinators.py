"""Closure combinators: range algebra checked exhaustively on small fixtures."""

import itertools

import numpy as np
import pytest

from rangesynth.circuit import CircuitBuilder, depth, size
from rangesynth.combinators import (
    concat_finite,
    finite_language,
    inverse_morphism,
    morphism,
    reverse,
    union,
    upclose,
)
from rangesynth.counting import synth_exact_count
from tests.conftest import exact_range


def _const_word(bits):
    b = CircuitBuilder(0)
    b.set_outputs([b.const(v) for v in bits])
    return b.build()


@pytest.fixture(scope="module")
def e31():
    return synth_exact_count(3, 1)[0]


@pytest.fixture(scope="module")
def e33():
    return synth_exact_count(3, 3)[0]


class TestUnion:
    def test_single_branch_unchanged(self, e31):
        assert exact_range(union([e31])) == exact_range(e31)

    def test_const_words(self):
        got = exact_range(union([_const_word([0, 0]), _const_word([1, 1])]))
        assert got == {bytes([0, 0]), bytes([1, 1])}

    def test_exact_counts(self, e31, e33):
        got = exact_range(union([e31, e33]))
        want = {
            bytes(w) for w in itertools.product((0, 1), repeat=3)
            if sum(w) in (1, 3)
        }
        assert got == want

    def test_mismatched_lengths_rejected(self, e31):
        with pytest.raises(ValueError):
            union([e31, _const_word([0, 0])])

    def test_selector_clamps_to_last(self, e31, e33):
        # 3 branches need 2 selector bits; value 3 must act like branch 2
        c = union([e31, e33, _const_word([0, 0, 0])])
        assert exact_range(c) == exact_range(union([e31, e33])) | {bytes(3)}


class TestConcat:
    def test_empty_word_identity(self, e31):
        c = concat_finite([[]], e31, side="left")
        assert exact_range(c) == exact_range(e31)

    def test_left_prefix(self):
        # all words of length 2 = range of exact(2,0) U exact(2,1) U exact(2,2)
        b = CircuitBuilder(2)
        b.set_outputs([b.input(0), b.input(1)])
        all2 = b.build()
        c = concat_finite([[1]], all2, side="left")
        assert exact_range(c) == {
            bytes([1, x, y]) for x, y in itertools.product((0, 1), repeat=2)
        }

    def test_right_product(self, e31):
        c = concat_finite([[0, 1], [1, 0]], e31, side="right")
        base = exact_range(e31)
        assert exact_range(c) == {
            w + bytes(s) for w in base for s in ([0, 1], [1, 0])
        }

    def test_empty_set_rejected(self, e31):
        with pytest.raises(ValueError):
            concat_finite([], e31)


class TestReverse:
    def test_involution(self, e31):
        assert exact_range(reverse(reverse(e31))) == exact_range(e31)

    def test_range_reversed(self):
        c = _const_word([1, 0, 0])
        assert exact_range(reverse(c)) == {bytes([0, 0, 1])}

    def test_palindromic_fixed_point(self, e31):
        # exact-count ranges are permutation-closed, hence reversal-closed
        assert exact_range(reverse(e31)) == exact_range(e31)


class TestMorphism:
    def test_identity(self, e31):
        assert exact_range(morphism([0], [1], e31)) == exact_range(e31)

    def test_doubling(self):
        c = _const_word([0, 1])
        assert exact_range(morphism([0, 0], [1, 1], c)) == {bytes([0, 0, 1, 1])}

    def test_exhaustive(self, e31):
        got = exact_range(morphism([0, 1], [1, 0], e31))
        want = {
            bytes(b for v in w for b in ([0, 1] if v == 0 else [1, 0]))
            for w in exact_range(e31)
        }
        assert got == want


class TestInverseMorphism:
    def test_injective(self):
        c = _const_word([0, 1, 1, 0])  # h(0) h(1) for h0=01, h1=10
        assert exact_range(inverse_morphism([0, 1], [1, 0], c)) == {bytes([0, 1])}

    def test_colliding_images_free_choice(self):
        c = _const_word([0, 0, 0, 0])
        got = exact_range(inverse_morphism([0, 0], [0, 0], c))
        assert got == {bytes([0, 0]), bytes([0, 1]), bytes([1, 0]), bytes([1, 1])}

    def test_block_size_must_divide(self, e31):
        with pytest.raises(ValueError):
            inverse_morphism([0, 0], [1, 1], e31)

    def test_roundtrip_through_morphism(self, e31):
        c = morphism([0, 0], [1, 1], e31)
        assert exact_range(inverse_morphism([0, 0], [1, 1], c)) == exact_range(e31)


class TestUpclose:
    def test_mask_zero_preserves(self, e31):
        c = upclose(e31)
        got = exact_range(c)
        assert exact_range(e31) <= got

    def test_const_zero_covers_everything(self):
        c = upclose(_const_word([0, 0, 0]))
        assert len(exact_range(c)) == 8

    def test_range_is_upward_closure(self, e31):
        got = exact_range(upclose(e31))
        want = set()
        for w in exact_range(e31):
            for mask in itertools.product((0, 1), repeat=3):
                want.add(bytes(a | b for a, b in zip(w, mask)))
        assert got == want

    def test_metric_deltas_exact(self, e31):
        c = upclose(e31)
        assert depth(c) == depth(e31) + 1
        assert size(c) == size(e31) + 3


class TestFiniteLanguage:
    def test_singleton_constant(self):
        c = finite_language([[1, 0, 1]])
        assert exact_range(c) == {bytes([1, 0, 1])}
        assert c.num_inputs == 0

    def test_clamped_selector(self):
        words = [[0, 0], [0, 1], [1, 0]]
        c = finite_language(words)
        # selector value 3 clamps to the last word
        assert exact_range(c) == {bytes(w) for w in words}

    def test_duplicates_removed(self):
        c = finite_language([[0, 1], [0, 1], [1, 1]])
        assert exact_range(c) == {bytes([0, 1]), bytes([1, 1])}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            finite_language([])
