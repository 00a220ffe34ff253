"""Mixed-polarity multi-controlled NOT gates and their basis-state simulation.

Qubits are numbered from 1.  A :class:`ControlledNotGate` flips its target when
every positive control is 1 and every negative control is 0.  Circuits act on
classical basis states only, so running one is a permutation of bit strings.

Internally a basis state of ``n`` qubits is packed into an ``int`` with qubit
``i`` at bit ``i - 1``; the public helpers take and return tuples of bits in
qubit order (``state[0]`` is qubit 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .boolfn import BooleanFunction
from .errors import ParseError, SemanticError, VerificationError

__all__ = [
    "ControlledNotGate",
    "Circuit",
    "apply_gate",
    "run",
    "run_all",
    "computed_function",
    "parse_circuit",
    "format_circuit",
    "state_from_bits",
    "bits_to_str",
    "ascii_diagram",
]


@dataclass(frozen=True)
class ControlledNotGate:
    """CNOT(C|t) with positive (fire on 1) and negative (fire on 0) controls."""

    target: int
    positive: frozenset = field(default_factory=frozenset)
    negative: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pos = frozenset(self.positive)
        neg = frozenset(self.negative)
        object.__setattr__(self, "positive", pos)
        object.__setattr__(self, "negative", neg)
        every = pos | neg
        if self.target < 1 or (every and min(every) < 1):
            raise SemanticError("qubit indices are 1-based")
        if pos & neg:
            raise SemanticError(f"qubits {sorted(pos & neg)} are both positive and negative controls")
        if self.target in pos or self.target in neg:
            raise SemanticError(f"target {self.target} is also a control")
        object.__setattr__(self, "_max", max(max(every, default=0), self.target))

    @property
    def controls(self) -> frozenset:
        return self.positive | self.negative

    @cached_property
    def _masks(self):
        pos = sum(1 << (i - 1) for i in self.positive)
        neg = sum(1 << (i - 1) for i in self.negative)
        return pos | neg, pos, 1 << (self.target - 1)

    def max_index(self) -> int:
        return self._max

    def apply_int(self, state: int) -> int:
        care, want, flip = self._masks
        if state & care == want:
            return state ^ flip
        return state

    def __str__(self):
        return format_gate(self)


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 0:
            raise SemanticError("circuit width must be non-negative")
        for g in self.gates:
            if g.max_index() > self.width:
                raise SemanticError(f"gate {g} uses a qubit beyond width {self.width}")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def targets(self) -> set:
        return {g.target for g in self.gates}

    def __str__(self):
        return format_circuit(self)


def state_from_bits(bits) -> tuple:
    """Accept ``"1011"`` or any sequence of 0/1 and return a tuple of ints."""
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise ParseError(f"basis state must be a 0/1 string, got {bits!r}")
        return tuple(ord(c) - 48 for c in bits)
    return tuple(int(b) & 1 for b in bits)


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


def _pack(bits):
    value = 0
    for i, b in enumerate(bits):
        if b:
            value |= 1 << i
    return value


def _unpack(value, n):
    return tuple((value >> i) & 1 for i in range(n))


def apply_gate(g: ControlledNotGate, state: Sequence[int]) -> tuple:
    bits = state_from_bits(state)
    if g.max_index() > len(bits):
        raise SemanticError(f"gate {g} does not fit a {len(bits)}-qubit state")
    return _unpack(g.apply_int(_pack(bits)), len(bits))


def run(c: Circuit, state: Sequence[int]) -> tuple:
    bits = state_from_bits(state)
    if len(bits) != c.width:
        raise SemanticError(f"state has {len(bits)} qubits, circuit has {c.width}")
    value = _pack(bits)
    for g in c.gates:
        value = g.apply_int(value)
    return _unpack(value, c.width)


def _run_array(gates, states):
    states = states.copy()
    for g in gates:
        care, want, flip = g._masks
        hit = (states & care) == want
        states[hit] ^= flip
    return states


def run_all(c: Circuit) -> np.ndarray:
    """Image of every packed basis state: ``out[s]`` is the state ``s`` maps to."""
    if c.width > 26:
        raise SemanticError("exhaustive simulation is limited to 26 qubits")
    return _run_array(c.gates, np.arange(1 << c.width, dtype=np.int64))


def computed_function(c: Circuit, input_arity: int, target: int | None = None) -> BooleanFunction:
    """Truth table read off ``target`` after running every input with it at 0.

    The input variables x1..xk are the non-target qubits in ascending order.
    Raises :class:`VerificationError` if any input qubit is changed.
    """
    if target is None:
        target = input_arity + 1
    if c.width != input_arity + 1:
        raise SemanticError(f"circuit width {c.width} != input arity {input_arity} + 1")
    if not 1 <= target <= c.width:
        raise SemanticError(f"target {target} outside 1..{c.width}")
    inputs = [q for q in range(1, c.width + 1) if q != target]
    rows = np.arange(1 << input_arity, dtype=np.int64)
    start = np.zeros_like(rows)
    for var, q in enumerate(inputs, start=1):
        start |= ((rows >> (input_arity - var)) & 1) << (q - 1)
    end = _run_array(c.gates, start)
    tbit = 1 << (target - 1)
    if np.any((end & ~tbit) != start):
        bad = int(np.flatnonzero((end & ~tbit) != start)[0])
        raise VerificationError(f"not function-preserving: input row {bad} changes an input qubit")
    return BooleanFunction(input_arity, ((end >> (target - 1)) & 1).astype(np.uint8))


# --------------------------------------------------------------------------
# text format

_HEADER = re.compile(r"qubits\s+(\d+)$")
_CONTROL = re.compile(r"([+-])(\d+)$")


def format_gate(g: ControlledNotGate) -> str:
    parts = [f"cnot {g.target}"]
    for i in sorted(g.controls):
        parts.append(f"{'+' if i in g.positive else '-'}{i}")
    return " ".join(parts)


def format_circuit(c: Circuit, comments: Iterable[str] = ()) -> str:
    lines = [f"# {line}" if line else "#" for line in comments]
    lines.append(f"qubits {c.width}")
    lines.extend(format_gate(g) for g in c.gates)
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    width = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if width is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected 'qubits N' header", line=lineno)
            width = int(m.group(1))
            continue
        words = line.split()
        if words[0] != "cnot" or len(words) < 2 or not words[1].isdigit():
            raise ParseError(f"malformed gate line {line!r}", line=lineno)
        target = int(words[1])
        pos, neg, seen = set(), set(), set()
        for w in words[2:]:
            m = _CONTROL.match(w)
            if not m:
                raise ParseError(f"malformed control {w!r}", line=lineno)
            idx = int(m.group(2))
            if idx in seen:
                raise ParseError(f"duplicate control index {idx}", line=lineno)
            seen.add(idx)
            (pos if m.group(1) == "+" else neg).add(idx)
        if target in seen:
            raise ParseError(f"target {target} listed as a control", line=lineno)
        for idx in seen | {target}:
            if not 1 <= idx <= width:
                raise ParseError(f"qubit index {idx} outside 1..{width}", line=lineno)
        gates.append(ControlledNotGate(target, frozenset(pos), frozenset(neg)))
    if width is None:
        raise ParseError("missing 'qubits N' header")
    return Circuit(width, gates)


def ascii_diagram(c: Circuit) -> str:
    """Rough text sketch: ``*`` positive control, ``o`` negative, ``X`` target."""
    rows = []
    for q in range(1, c.width + 1):
        cells = []
        for g in c.gates:
            lo, hi = min(g.controls | {g.target}), g.max_index()
            if q == g.target:
                cells.append("X")
            elif q in g.positive:
                cells.append("*")
            elif q in g.negative:
                cells.append("o")
            elif lo < q < hi:
                cells.append("|")
            else:
                cells.append("-")
        rows.append(f"q{q:<3}-" + "--".join(cells) + "-")
    return "\n".join(rows)
