"""Bounded-fanin boolean circuits.

A circuit is a DAG of INPUT / CONST / NOT / AND / OR gates with dense ids in
topological order (operands always have smaller ids than the gate that reads
them) and an ordered list of output gate ids.  Circuits are immutable after
construction and safe to share across threads read-only; evaluation keeps its
scratch state local to the call.

Conventions (documented because the choice matters to the metrics):

* depth: INPUT and CONST gates have depth 0, every NOT/AND/OR adds 1.
* size: number of logic gates (NOT/AND/OR); INPUT and CONST gates are free.
* alternations: maximum number of maximal same-type AND/OR blocks on any
  input-to-output path, counted on the negation-pushed-to-leaves view (a NOT
  between two ANDs makes them count as an AND/OR switch).  A pure AND tree
  has one alternation; a bare wire has zero.
* cone: the set of distinct INPUT gates an output transitively reads.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

INPUT, CONST, NOT, AND, OR = range(5)

_KIND_NAMES = ("INPUT", "CONST", "NOT", "AND", "OR")
_NAME_TO_KIND = {name: kind for kind, name in enumerate(_KIND_NAMES)}


class CircuitError(ValueError):
    """Base class for circuit construction / use errors."""


class InputArityError(CircuitError):
    """Evaluation input vector length does not match num_inputs."""


class StructureError(CircuitError):
    """Topological-order or reference invariant violated."""


class ParseError(CircuitError):
    """Malformed circuit text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Gate(NamedTuple):
    id: int
    kind: int
    a: int
    b: int

    @property
    def kind_name(self) -> str:
        return _KIND_NAMES[self.kind]


class Circuit:
    """Immutable gate list plus designated outputs.

    Gates are stored as parallel arrays (kind, a, b) so that multi-million
    gate circuits stay cheap; ``gate(i)`` gives a friendly view.
    """

    __slots__ = ("num_inputs", "kinds", "arg0", "arg1", "outputs", "_np_cache")

    def __init__(self, num_inputs, kinds, arg0, arg1, outputs, _validated=False):
        self.num_inputs = int(num_inputs)
        self.kinds = kinds if isinstance(kinds, array) else array("b", kinds)
        self.arg0 = arg0 if isinstance(arg0, array) else array("q", arg0)
        self.arg1 = arg1 if isinstance(arg1, array) else array("q", arg1)
        self.outputs = list(outputs)
        self._np_cache = None
        if not _validated:
            self._validate()

    # -- basic structure ---------------------------------------------------

    @property
    def num_gates(self) -> int:
        return len(self.kinds)

    def gate(self, i: int) -> Gate:
        return Gate(i, self.kinds[i], self.arg0[i], self.arg1[i])

    def gates(self) -> Iterator[Gate]:
        for i in range(len(self.kinds)):
            yield Gate(i, self.kinds[i], self.arg0[i], self.arg1[i])

    def _validate(self):
        if self.num_inputs < 0:
            raise StructureError("num_inputs must be non-negative")
        n = len(self.kinds)
        if not (len(self.arg0) == len(self.arg1) == n):
            raise StructureError("gate arrays must have equal length")
        for i in range(n):
            k = self.kinds[i]
            a, b = self.arg0[i], self.arg1[i]
            if k == INPUT:
                if not (0 <= a < self.num_inputs):
                    raise StructureError(f"gate {i}: input index {a} out of range")
            elif k == CONST:
                if a not in (0, 1):
                    raise StructureError(f"gate {i}: const value {a} not a bit")
            elif k == NOT:
                if not (0 <= a < i):
                    raise StructureError(f"gate {i}: operand {a} not earlier gate")
            elif k in (AND, OR):
                if not (0 <= a < i and 0 <= b < i):
                    raise StructureError(f"gate {i}: operands ({a},{b}) not earlier gates")
            else:
                raise StructureError(f"gate {i}: unknown kind {k}")
        for o in self.outputs:
            if not (0 <= o < n):
                raise StructureError(f"output id {o} does not exist")

    def _arrays(self):
        if self._np_cache is None:
            self._np_cache = (
                np.frombuffer(self.kinds, dtype=np.int8),
                np.frombuffer(self.arg0, dtype=np.int64),
                np.frombuffer(self.arg1, dtype=np.int64),
            )
        return self._np_cache

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.num_inputs == other.num_inputs
            and self.kinds == other.kinds
            and self.arg0 == other.arg0
            and self.arg1 == other.arg1
            and self.outputs == other.outputs
        )

    def __repr__(self):
        return (
            f"Circuit(inputs={self.num_inputs}, gates={self.num_gates}, "
            f"outputs={len(self.outputs)})"
        )


class CircuitBuilder:
    """Append-only constructor for :class:`Circuit`.

    INPUT, CONST and NOT gates are deduplicated (they are pure and free to
    share); AND/OR gates are always emitted, so size accounting of the
    synthesized structure stays predictable.  The ``*_f`` variants fold
    constant operands at construction time and are used by synthesizers that
    can prove the fold exact.
    """

    def __init__(self, num_inputs: int):
        self.num_inputs = num_inputs
        self.kinds = array("b")
        self.arg0 = array("q")
        self.arg1 = array("q")
        self.outputs: list[int] = []
        self._input_ids: dict[int, int] = {}
        self._const_ids: dict[int, int] = {}
        self._not_ids: dict[int, int] = {}

    def _emit(self, kind: int, a: int, b: int = 0) -> int:
        gid = len(self.kinds)
        self.kinds.append(kind)
        self.arg0.append(a)
        self.arg1.append(b)
        return gid

    def input(self, index: int) -> int:
        if not (0 <= index < self.num_inputs):
            raise StructureError(f"input index {index} out of range")
        gid = self._input_ids.get(index)
        if gid is None:
            gid = self._input_ids[index] = self._emit(INPUT, index)
        return gid

    def const(self, bit: int) -> int:
        bit = int(bit)
        if bit not in (0, 1):
            raise StructureError("const must be 0 or 1")
        gid = self._const_ids.get(bit)
        if gid is None:
            gid = self._const_ids[bit] = self._emit(CONST, bit)
        return gid

    def not_(self, a: int) -> int:
        gid = self._not_ids.get(a)
        if gid is None:
            gid = self._not_ids[a] = self._emit(NOT, a)
        return gid

    def and_(self, a: int, b: int) -> int:
        return self._emit(AND, a, b)

    def or_(self, a: int, b: int) -> int:
        return self._emit(OR, a, b)

    # -- constant-folding variants ----------------------------------------

    def const_value(self, g: int) -> int | None:
        """Return the bit a gate is a CONST of, or None."""
        if self.kinds[g] == CONST:
            return self.arg0[g]
        return None

    def not_f(self, a: int) -> int:
        v = self.const_value(a)
        if v is not None:
            return self.const(1 - v)
        return self.not_(a)

    def and_f(self, a: int, b: int) -> int:
        va, vb = self.const_value(a), self.const_value(b)
        if va == 0 or vb == 0:
            return self.const(0)
        if va == 1:
            return b
        if vb == 1:
            return a
        return self._emit(AND, a, b)

    def or_f(self, a: int, b: int) -> int:
        va, vb = self.const_value(a), self.const_value(b)
        if va == 1 or vb == 1:
            return self.const(1)
        if va == 0:
            return b
        if vb == 0:
            return a
        return self._emit(OR, a, b)

    def xor_f(self, a: int, b: int) -> int:
        va, vb = self.const_value(a), self.const_value(b)
        if va is not None:
            return b if va == 0 else self.not_f(b)
        if vb is not None:
            return a if vb == 0 else self.not_f(a)
        return self.or_(self.and_(a, self.not_(b)), self.and_(self.not_(a), b))

    # -- balanced trees ----------------------------------------------------

    def _tree(self, op, wires: Sequence[int], empty: int) -> int:
        wires = list(wires)
        if not wires:
            return self.const(empty)
        while len(wires) > 1:
            nxt = [
                op(wires[i], wires[i + 1]) if i + 1 < len(wires) else wires[i]
                for i in range(0, len(wires), 2)
            ]
            wires = nxt
        return wires[0]

    def and_tree(self, wires: Sequence[int]) -> int:
        return self._tree(self.and_, wires, 1)

    def or_tree(self, wires: Sequence[int]) -> int:
        return self._tree(self.or_, wires, 0)

    def and_tree_f(self, wires: Sequence[int]) -> int:
        kept = []
        for w in wires:
            v = self.const_value(w)
            if v == 0:
                return self.const(0)
            if v != 1:
                kept.append(w)
        return self._tree(self.and_, kept, 1)

    def or_tree_f(self, wires: Sequence[int]) -> int:
        kept = []
        for w in wires:
            v = self.const_value(w)
            if v == 1:
                return self.const(1)
            if v != 0:
                kept.append(w)
        return self._tree(self.or_, kept, 0)

    def xor_tree(self, wires: Sequence[int]) -> int:
        wires = list(wires)
        if not wires:
            return self.const(0)
        while len(wires) > 1:
            nxt = [
                self.xor_f(wires[i], wires[i + 1]) if i + 1 < len(wires) else wires[i]
                for i in range(0, len(wires), 2)
            ]
            wires = nxt
        return wires[0]

    def set_outputs(self, outputs: Sequence[int]):
        self.outputs = list(outputs)

    def add_output(self, gate_id: int):
        self.outputs.append(gate_id)

    def append_circuit(self, other: Circuit, input_wires: Sequence[int]) -> list[int]:
        """Inline another circuit, feeding its inputs from the given wires.

        Returns the wires carrying the other circuit's outputs.
        """
        if len(input_wires) != other.num_inputs:
            raise InputArityError(
                f"expected {other.num_inputs} input wires, got {len(input_wires)}"
            )
        remap = [0] * other.num_gates
        kinds, a0, a1 = other.kinds, other.arg0, other.arg1
        for i in range(other.num_gates):
            k = kinds[i]
            if k == INPUT:
                remap[i] = input_wires[a0[i]]
            elif k == CONST:
                remap[i] = self.const(a0[i])
            elif k == NOT:
                remap[i] = self.not_(remap[a0[i]])
            elif k == AND:
                remap[i] = self.and_(remap[a0[i]], remap[a1[i]])
            else:
                remap[i] = self.or_(remap[a0[i]], remap[a1[i]])
        return [remap[o] for o in other.outputs]

    def build(self) -> Circuit:
        return Circuit(
            self.num_inputs, self.kinds, self.arg0, self.arg1, self.outputs,
            _validated=True,
        )


def table_to_subcircuit(builder: CircuitBuilder, table: Sequence[int], wires: Sequence[int]) -> int:
    """Append a DNF subcircuit computing an arbitrary truth table.

    ``table`` has ``2**k`` entries where ``k = len(wires)``; row ``r`` gives
    the value when ``wires[i]`` carries bit ``(r >> i) & 1`` (wires[0] is the
    least significant index bit).  True rows become balanced AND trees of
    literals, joined by a balanced OR tree, so the local depth is at most
    ``ceil(log2 k) + ceil(log2 #true_rows) + 1``.  A constant table collapses
    to a CONST gate.
    """
    k = len(wires)
    if len(table) != 1 << k:
        raise CircuitError(f"table needs {1 << k} entries, got {len(table)}")
    true_rows = [r for r in range(1 << k) if table[r]]
    if not true_rows:
        return builder.const(0)
    if len(true_rows) == 1 << k:
        return builder.const(1)
    terms = []
    for r in true_rows:
        lits = [
            wires[i] if (r >> i) & 1 else builder.not_(wires[i])
            for i in range(k)
        ]
        terms.append(builder.and_tree(lits))
    return builder.or_tree(terms)


def lower_fields(builder: CircuitBuilder, fields, fn) -> int:
    """Lower a predicate over small bit-encoded fields to a DNF subcircuit.

    ``fields`` is a list of ``(wires_msb_first, num_values)`` pairs; each
    field decodes to an integer, clamped to ``num_values - 1`` when
    ``num_values`` is given (the out-of-range-encoding convention).  ``fn``
    receives one decoded value per field and returns the predicate bit.
    """
    wires_lsb: list[int] = []
    widths: list[tuple[int, int | None]] = []
    for ws, nv in fields:
        wires_lsb.extend(reversed(list(ws)))
        widths.append((len(ws), nv))
    total = len(wires_lsb)
    table = []
    for row in range(1 << total):
        vals = []
        shift = 0
        for nbits, nv in widths:
            v = (row >> shift) & ((1 << nbits) - 1)
            shift += nbits
            if nv is not None and v >= nv:
                v = nv - 1
            vals.append(v)
        table.append(1 if fn(*vals) else 0)
    return table_to_subcircuit(builder, table, wires_lsb)


# ---------------------------------------------------------------------------
# evaluation


def _as_bits(x, length: int, what: str = "input") -> np.ndarray:
    if isinstance(x, str):
        if not set(x) <= {"0", "1"}:
            raise InputArityError(f"{what} string must be over 0/1")
        bits = np.frombuffer(x.encode(), dtype=np.uint8) - ord("0")
    else:
        bits = np.asarray(x, dtype=np.uint8)
    if bits.ndim != 1 or len(bits) != length:
        raise InputArityError(f"{what} must have length {length}, got {len(bits)}")
    return bits


def eval_circuit(c: Circuit, x) -> list[int]:
    """Evaluate on a single input vector; returns the output bits."""
    bits = _as_bits(x, c.num_inputs)
    vals = bytearray(c.num_gates)
    kinds, a0, a1 = c.kinds, c.arg0, c.arg1
    for i in range(c.num_gates):
        k = kinds[i]
        if k == AND:
            vals[i] = vals[a0[i]] & vals[a1[i]]
        elif k == OR:
            vals[i] = vals[a0[i]] | vals[a1[i]]
        elif k == NOT:
            vals[i] = 1 - vals[a0[i]]
        elif k == INPUT:
            vals[i] = bits[a0[i]]
        else:
            vals[i] = a0[i]
    return [vals[o] for o in c.outputs]


def eval_batch(c: Circuit, X: np.ndarray) -> np.ndarray:
    """Evaluate many inputs at once.

    ``X`` is a (N, num_inputs) uint8 array; returns (N, num_outputs) uint8.
    Intermediate gate values are freed as soon as their last consumer has run,
    so memory stays proportional to the live frontier, not the gate count.
    """
    X = np.asarray(X, dtype=np.uint8)
    if X.ndim != 2 or X.shape[1] != c.num_inputs:
        raise InputArityError(
            f"batch must be (N, {c.num_inputs}), got {X.shape}"
        )
    n_gates = c.num_gates
    kinds, a0, a1 = c.kinds, c.arg0, c.arg1
    last_use = [-1] * n_gates
    for i in range(n_gates):
        k = kinds[i]
        if k == NOT:
            last_use[a0[i]] = i
        elif k in (AND, OR):
            last_use[a0[i]] = i
            last_use[a1[i]] = i
    out_set = set(c.outputs)
    vals: list[np.ndarray | None] = [None] * n_gates
    for i in range(n_gates):
        k = kinds[i]
        if k == AND:
            v = vals[a0[i]] & vals[a1[i]]
        elif k == OR:
            v = vals[a0[i]] | vals[a1[i]]
        elif k == NOT:
            v = 1 - vals[a0[i]]
        elif k == INPUT:
            v = X[:, a0[i]]
        else:
            v = np.full(X.shape[0], a0[i], dtype=np.uint8)
        vals[i] = v
        for j in (a0[i], a1[i]) if k in (AND, OR) else ((a0[i],) if k == NOT else ()):
            if last_use[j] == i and j not in out_set:
                vals[j] = None
    out = np.empty((X.shape[0], len(c.outputs)), dtype=np.uint8)
    for col, o in enumerate(c.outputs):
        out[:, col] = vals[o]
    return out


def all_inputs(m: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield every length-m input vector in numeric order, in chunks.

    Bit i of the row index is input i, so rows come out in order of the
    integer whose LSB is input 0.
    """
    total = 1 << m
    shifts = np.arange(m, dtype=np.uint64)
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        yield ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        start = stop


def circuit_range(c: Circuit, budget: int = 1 << 24) -> set[bytes]:
    """Exhaustive range of the circuit as a set of packed output words."""
    if 1 << c.num_inputs > budget:
        raise CircuitError(
            f"range enumeration needs 2^{c.num_inputs} evaluations, over budget {budget}"
        )
    seen: set[bytes] = set()
    for X in all_inputs(c.num_inputs):
        Y = eval_batch(c, X)
        for row in np.unique(Y, axis=0):
            seen.add(row.tobytes())
    return seen


# ---------------------------------------------------------------------------
# metrics

try:  # numba makes the structural sweeps fast on multi-million gate circuits
    from numba import njit as _njit
except Exception:  # pragma: no cover - exercised only without numba
    _njit = None

_NUMBA_THRESHOLD = 200_000


def _depth_py(kinds, a0, a1):
    depth = np.zeros(len(kinds), dtype=np.int64)
    for i in range(len(kinds)):
        k = kinds[i]
        if k == NOT:
            depth[i] = depth[a0[i]] + 1
        elif k == AND or k == OR:
            da, db = depth[a0[i]], depth[a1[i]]
            depth[i] = (da if da > db else db) + 1
    return depth


def _alt_py(kinds, a0, a1):
    # blocks[i, pol] / types[i, pol]: max count of maximal AND/OR blocks on a
    # path ending at gate i when the gate is observed in polarity pol
    # (0 positive, 1 negated), plus the type the path currently ends in
    # (0 none, 1 AND, 2 OR).
    n = len(kinds)
    blocks = np.zeros((n, 2), dtype=np.int64)
    types = np.zeros((n, 2), dtype=np.int8)
    for i in range(n):
        k = kinds[i]
        if k == NOT:
            s = a0[i]
            blocks[i, 0] = blocks[s, 1]
            types[i, 0] = types[s, 1]
            blocks[i, 1] = blocks[s, 0]
            types[i, 1] = types[s, 0]
        elif k == AND or k == OR:
            for pol in (0, 1):
                t = 1 if (k == AND) == (pol == 0) else 2
                best = 1
                for s in (a0[i], a1[i]):
                    sb, st = blocks[s, pol], types[s, pol]
                    cand = sb if st == t else sb + 1
                    if cand > best:
                        best = cand
                blocks[i, pol] = best
                types[i, pol] = t
    return blocks


if _njit is not None:
    _depth_nb = _njit(cache=True)(_depth_py)
    _alt_nb = _njit(cache=True)(_alt_py)


def _run_kernel(c: Circuit, py_fn, nb_fn):
    kinds, a0, a1 = c._arrays()
    if nb_fn is not None and c.num_gates >= _NUMBA_THRESHOLD:
        return nb_fn(kinds, a0, a1)
    return py_fn(kinds, a0, a1)


def gate_depths(c: Circuit) -> np.ndarray:
    return _run_kernel(c, _depth_py, _depth_nb if _njit else None)


def depth(c: Circuit) -> int:
    if not c.outputs:
        return 0
    d = gate_depths(c)
    return int(max(d[o] for o in c.outputs))


def size(c: Circuit) -> int:
    """Number of logic gates (NOT/AND/OR)."""
    kinds, _, _ = c._arrays()
    return int(np.count_nonzero(kinds >= NOT))


def alternations(c: Circuit) -> int:
    if not c.outputs:
        return 0
    blocks = _run_kernel(c, _alt_py, _alt_nb if _njit else None)
    return int(max(blocks[o, 0] for o in c.outputs))


def cone_sizes(c: Circuit) -> list[int]:
    """Per-output count of distinct reachable INPUT gates.

    Memoizes per-gate cones as sets; cost scales with the total cone mass,
    so this is meant for circuits with small cones (the NC0 families) or
    moderate overall size.
    """
    kinds, a0, a1 = c.kinds, c.arg0, c.arg1
    needed = set(c.outputs)
    stack = list(c.outputs)
    while stack:
        g = stack.pop()
        k = kinds[g]
        if k == NOT:
            srcs = (a0[g],)
        elif k in (AND, OR):
            srcs = (a0[g], a1[g])
        else:
            srcs = ()
        for s in srcs:
            if s not in needed:
                needed.add(s)
                stack.append(s)
    cones: dict[int, frozenset] = {}
    for g in sorted(needed):
        k = kinds[g]
        if k == INPUT:
            cones[g] = frozenset((a0[g],))
        elif k == CONST:
            cones[g] = frozenset()
        elif k == NOT:
            cones[g] = cones[a0[g]]
        else:
            cones[g] = cones[a0[g]] | cones[a1[g]]
    return [len(cones[o]) for o in c.outputs]


@dataclass
class CircuitMetrics:
    depth: int
    size: int
    alternations: int
    cone_sizes: list[int]

    @property
    def max_cone(self) -> int:
        return max(self.cone_sizes) if self.cone_sizes else 0


def metrics(c: Circuit, with_cones: bool = True) -> CircuitMetrics:
    """Structural measurements; see module docstring for the conventions.

    ``with_cones=False`` skips the cone sweep, which is the only part whose
    cost can blow up on wide-cone circuits.
    """
    return CircuitMetrics(
        depth=depth(c),
        size=size(c),
        alternations=alternations(c),
        cone_sizes=cone_sizes(c) if with_cones else [],
    )


# ---------------------------------------------------------------------------
# text format
#
# circuit <num_inputs> <num_gates> <num_outputs>
# <id> INPUT <i> | <id> CONST <b> | <id> NOT <a> | <id> AND <a> <b> | <id> OR <a> <b>
# outputs <id...>


def serialize(c: Circuit) -> str:
    lines = [f"circuit {c.num_inputs} {c.num_gates} {len(c.outputs)}"]
    for i in range(c.num_gates):
        k = c.kinds[i]
        if k in (AND, OR):
            lines.append(f"{i} {_KIND_NAMES[k]} {c.arg0[i]} {c.arg1[i]}")
        else:
            lines.append(f"{i} {_KIND_NAMES[k]} {c.arg0[i]}")
    lines.append(("outputs " + " ".join(str(o) for o in c.outputs)).rstrip())
    return "\n".join(lines) + "\n"


def parse(text: str) -> Circuit:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty circuit text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "circuit":
        raise ParseError("expected 'circuit <inputs> <gates> <outputs>'", 1)
    try:
        num_inputs, num_gates, num_outputs = (int(t) for t in head[1:])
    except ValueError:
        raise ParseError("non-integer header field", 1) from None
    if len(lines) != num_gates + 2:
        raise ParseError(
            f"expected {num_gates} gate lines plus outputs, got {len(lines) - 2}"
        )
    kinds = array("b")
    arg0 = array("q")
    arg1 = array("q")
    for gid in range(num_gates):
        lineno = gid + 2
        toks = lines[gid + 1].split()
        if len(toks) < 3:
            raise ParseError("too few fields", lineno)
        try:
            idx = int(toks[0])
        except ValueError:
            raise ParseError("non-integer gate id", lineno) from None
        if idx != gid:
            raise ParseError(f"expected gate id {gid}, got {idx}", lineno)
        kind = _NAME_TO_KIND.get(toks[1])
        if kind is None:
            raise ParseError(f"unknown gate kind {toks[1]!r}", lineno)
        want = 2 if kind in (AND, OR) else 1
        args = toks[2:]
        if len(args) != want:
            raise ParseError(f"{toks[1]} takes {want} operand(s)", lineno)
        try:
            vals = [int(t) for t in args]
        except ValueError:
            raise ParseError("non-integer operand", lineno) from None
        if kind == INPUT:
            if not (0 <= vals[0] < num_inputs):
                raise ParseError(f"input index {vals[0]} out of range", lineno)
        elif kind == CONST:
            if vals[0] not in (0, 1):
                raise ParseError(f"const value {vals[0]} not a bit", lineno)
        else:
            for v in vals:
                if not (0 <= v < gid):
                    raise StructureError(
                        f"line {lineno}: operand {v} is not an earlier gate"
                    )
        kinds.append(kind)
        arg0.append(vals[0])
        arg1.append(vals[1] if len(vals) > 1 else 0)
    out_toks = lines[-1].split()
    if not out_toks or out_toks[0] != "outputs":
        raise ParseError("expected final 'outputs' line", len(lines))
    try:
        outputs = [int(t) for t in out_toks[1:]]
    except ValueError:
        raise ParseError("non-integer output id", len(lines)) from None
    if len(outputs) != num_outputs:
        raise ParseError(
            f"header promised {num_outputs} outputs, got {len(outputs)}", len(lines)
        )
    for o in outputs:
        if not (0 <= o < num_gates):
            raise StructureError(f"output id {o} does not exist")
    return Circuit(num_inputs, kinds, arg0, arg1, outputs, _validated=True)
