"""Regular-language synthesis: unrolling, interval-tree construction, witnesses.

The heavyweight check here is a pure-Python reference decoder implementing
the documented output rule (verbatim bits on fully consistent paths, patch
from the topmost inconsistent node's label witness, whole-word fallback at
an inconsistent root).  The synthesized circuit must agree with it on every
proof input at small n.
"""

import itertools

import numpy as np
import pytest

from rangesynth.circuit import eval_batch, eval_circuit
from rangesynth.intervals import build_tree, leaf_for_position, path_to_leaf, preorder
from rangesynth.languages import Regular, member
from rangesynth.regular import (
    StructureError,
    SynthesisError,
    WitnessError,
    parse_bp,
    synth_regular,
    synth_structured,
    unroll,
    witness_bp,
    witness_regular,
)
from tests.conftest import exact_range, slice_set

XX_BP = """\
gaps 4
states 2
start 0
final 0
var 1 1
var 2 3
var 3 2
var 4 4
edge 1 0 0 0
edge 1 0 1 1
edge 2 0 0 0
edge 2 1 1 0
edge 3 0 0 0
edge 3 0 1 1
edge 4 0 0 0
edge 4 1 1 0
"""


class TestUnroll:
    def test_parity_shape(self, parity):
        bp = unroll(parity, 2)
        assert list(bp.widths) == [1, 2, 2, 1]
        assert bp.n == 2

    def test_paths_match_runs(self, parity):
        bp = unroll(parity, 3)
        for w in itertools.product((0, 1), repeat=3):
            assert bp.accepts(list(w)) == parity.accepts(list(w))

    def test_nfa_parallel_edges(self, nfa1):
        bp = unroll(nfa1, 2)
        # start has two 1-successors in the first gap
        assert int(bp.rel1[0].sum()) == 2


class TestParseBp:
    def test_xx_bp(self):
        bp = parse_bp(XX_BP)
        assert bp.n == 4 and bp.width == 2
        assert bp.gap_var == (1, 3, 2, 4)

    def test_gap_vars_must_permute(self):
        bad = XX_BP.replace("var 4 4", "var 4 1")
        with pytest.raises(StructureError):
            parse_bp(bad)


# ---------------------------------------------------------------------------
# reference decoder


def _clamp(val, width):
    return min(val, width - 1)


def _decode_labels(layout, widths, proof):
    """Pre-order list of (lo, hi, p, q) from the label slots (MSB first)."""
    out = []
    for lo, hi, off, p_bits, q_bits in layout.labels:
        p = 0
        for i in range(p_bits):
            p = (p << 1) | int(proof[off + i])
        q = 0
        for i in range(q_bits):
            q = (q << 1) | int(proof[off + p_bits + i])
        out.append((lo, hi, _clamp(p, widths[lo]), _clamp(q, widths[hi])))
    return out


def _gap_any(bp, g):
    if g <= bp.n:
        return bp.rel0[g - 1] | bp.rel1[g - 1]
    return bp.accept[:, None]


_REACH_MEMO = {}


def _reach(bp, lo, hi):
    key = (id(bp), lo, hi)
    r = _REACH_MEMO.get(key)
    if r is None:
        r = np.eye(bp.widths[lo], dtype=bool)
        for g in range(lo + 1, hi + 1):
            r = r @ _gap_any(bp, g)
        _REACH_MEMO[key] = r
    return r


def _witness_bit(bp, lo, hi, p, q, rel):
    """Bit rel of the lexicographically-smallest-states witness for (p, q)."""
    L = hi - lo
    n_words = L - (1 if hi == bp.n + 1 else 0)
    assert 0 <= rel < n_words
    cur = p
    for t in range(L):
        g = lo + t + 1
        rel_any = _gap_any(bp, g)
        tail = _reach(bp, lo + t + 1, hi)
        nxt = min(
            s for s in range(rel_any.shape[1]) if rel_any[cur, s] and tail[s, q]
        )
        if t == rel:
            return 0 if (g <= bp.n and bp.rel0[g - 1][cur, nxt]) else 1
        cur = nxt
    raise AssertionError("unreachable")


def reference_decode(bp, layout, proof):
    """Independent implementation of the output rule."""
    n = bp.n
    widths = bp.widths
    a = [int(b) for b in proof[:n]]
    labels = {
        (lo, hi): (p, q) for lo, hi, p, q in _decode_labels(layout, widths, proof)
    }
    labels[(0, n + 1)] = (0, 0)  # root label hardwired <s, t>
    tree = build_tree(0, n + 1)

    def feas(node):
        p, q = labels[(node.lo, node.hi)]
        return bool(_reach(bp, node.lo, node.hi)[p, q])

    def cons_like(node):
        p, q = labels[(node.lo, node.hi)]
        if node.is_leaf:
            if node.hi == n + 1:
                return bool(bp.accept[p])
            bit = a[bp.gap_var[node.hi - 1] - 1]
            rel = bp.rel1[node.hi - 1] if bit else bp.rel0[node.hi - 1]
            return bool(rel[p, q])
        pl, ql = labels[(node.left.lo, node.left.hi)]
        pr, qr = labels[(node.right.lo, node.right.hi)]
        return (
            p == pl and ql == pr and q == qr
            and feas(node) and feas(node.left) and feas(node.right)
        )

    word = []
    for k in range(1, n + 1):
        path = path_to_leaf(tree, k)  # root ... leaf
        bad = next((x for x in path if not cons_like(x)), None)
        if bad is None:
            word.append(a[bp.gap_var[k - 1] - 1])
        else:
            p, q = labels[(bad.lo, bad.hi)]
            word.append(_witness_bit(bp, bad.lo, bad.hi, p, q, k - bad.lo - 1))
    out = [0] * n
    for k in range(1, n + 1):
        out[bp.gap_var[k - 1] - 1] = word[k - 1]
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_circuit_matches_reference_decoder_parity(parity, n):
    bp = unroll(parity, n)
    c, layout = synth_regular(parity, n)
    rows = np.array(
        list(itertools.product((0, 1), repeat=c.num_inputs)), dtype=np.uint8
    )
    outs = eval_batch(c, rows)
    for proof, out in zip(rows, outs):
        assert list(out) == reference_decode(bp, layout, proof)


def test_circuit_matches_reference_decoder_th2(th2):
    bp = unroll(th2, 3)
    c, layout = synth_regular(th2, 3)
    rows = np.array(
        list(itertools.product((0, 1), repeat=c.num_inputs)), dtype=np.uint8
    )
    outs = eval_batch(c, rows)
    for proof, out in zip(rows, outs):
        assert list(out) == reference_decode(bp, layout, proof)


def test_circuit_matches_reference_decoder_structured():
    bp = parse_bp(XX_BP)
    c, layout = synth_structured(bp)
    rows = np.array(
        list(itertools.product((0, 1), repeat=c.num_inputs)), dtype=np.uint8
    )
    outs = eval_batch(c, rows)
    for proof, out in zip(rows, outs):
        assert list(out) == reference_decode(bp, layout, proof)


# ---------------------------------------------------------------------------
# ranges, witnesses, errors


class TestSynthRegular:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_parity_range(self, parity, n):
        c, _ = synth_regular(parity, n)
        assert exact_range(c) == slice_set(parity.accepts, n)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_nfa_range(self, nfa1, n):
        c, _ = synth_regular(nfa1, n)
        assert exact_range(c) == slice_set(nfa1.accepts, n)

    def test_empty_slice_is_an_error(self, th2):
        with pytest.raises(SynthesisError):
            synth_regular(th2, 1)

    def test_honest_proof_reproduces_word(self, parity):
        c, _ = synth_regular(parity, 2)
        proof = witness_regular(parity, [1, 1])
        assert eval_circuit(c, proof) == [1, 1]

    def test_mismatched_root_children_fall_back_to_wst(self, parity):
        c, layout = synth_regular(parity, 2)
        proof = np.array(witness_regular(parity, [1, 1]), dtype=np.uint8)
        # root's children are (0,1] (q slot) and (1,3] (p slot); break the
        # shared boundary so the root goes inconsistent
        slots = {(lo, hi): (off, pb, qb) for lo, hi, off, pb, qb in layout.labels}
        off, pb, qb = slots[(1, 3)]
        proof[off] ^= 1
        # w_{s,t} for parity is the lexicographically smallest even word: 00
        assert eval_circuit(c, proof) == [0, 0]

    def test_non_member_witness_rejected(self, parity):
        with pytest.raises(WitnessError):
            witness_regular(parity, [1, 0])

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_witness_completeness(self, mod3, n):
        c, _ = synth_regular(mod3, n)
        for w in itertools.product((0, 1), repeat=n):
            if not mod3.accepts(list(w)):
                continue
            proof = witness_regular(mod3, list(w))
            assert eval_circuit(c, proof) == list(w)


class TestSynthStructured:
    def test_xx_range(self):
        c, _ = synth_structured(parse_bp(XX_BP))
        assert exact_range(c) == {
            bytes([0, 0, 0, 0]), bytes([0, 1, 0, 1]),
            bytes([1, 0, 1, 0]), bytes([1, 1, 1, 1]),
        }

    def test_unrolled_dfa_matches_synth_regular(self, parity):
        c1, _ = synth_regular(parity, 3)
        c2, _ = synth_structured(unroll(parity, 3))
        assert exact_range(c1) == exact_range(c2)

    def test_two_vars_in_one_gap_rejected(self):
        bad = XX_BP.replace("edge 2 1 1 0", "edge 2 1 1 0\nvar 2 4")
        with pytest.raises(StructureError):
            parse_bp(bad)

    def test_witness_bp_roundtrip(self):
        bp = parse_bp(XX_BP)
        c, _ = synth_structured(bp)
        for x1, x2 in itertools.product((0, 1), repeat=2):
            w = [x1, x2, x1, x2]
            assert eval_circuit(c, witness_bp(bp, w)) == w
