"""Reversible gate library and classical netlist conversion.

Each classical gate kind has a fragment of controlled-NOT gates that writes
its result onto a fresh zero-initialized target qubit and leaves the operand
qubits untouched.  :func:`convert` chains those fragments for a whole
combinational netlist.

Netlist text format::

    # full adder sum bit
    input a b cin
    t = XOR a b
    s = XOR t cin
    output s

Statements may also be separated by ``;`` on one line.
"""

from __future__ import annotations

import enum
import heapq
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, ControlledNotGate, _run_array
from .errors import ParseError, SemanticError

__all__ = [
    "GateKind",
    "template",
    "NetGate",
    "Netlist",
    "QubitMap",
    "Verdict",
    "parse_netlist",
    "convert",
    "verify_conversion",
]


class GateKind(enum.Enum):
    AND = "AND"
    OR = "OR"
    NOT = "NOT"
    NAND = "NAND"
    NOR = "NOR"
    XOR = "XOR"
    XNOR = "XNOR"
    FANOUT = "FANOUT"

    @property
    def arity(self) -> int:
        return 1 if self in (GateKind.NOT, GateKind.FANOUT) else 2


_INVERTED = {GateKind.NAND: GateKind.AND, GateKind.NOR: GateKind.OR,
             GateKind.XNOR: GateKind.XOR}


def template(kind: GateKind, operands: Sequence[int], target: int) -> list:
    """Controlled-NOT fragment computing ``kind(operands)`` onto ``target``.

    ``target`` must hold 0 beforehand.  NOT copies its operand then flips the
    copy, so the operand is preserved.
    """
    kind = GateKind(kind)
    operands = tuple(operands)
    if len(operands) != kind.arity:
        raise SemanticError(f"{kind.value} takes {kind.arity} operand(s), got {len(operands)}")
    if target in operands:
        raise SemanticError(f"target qubit {target} is also an operand")

    def cx(*controls):
        return ControlledNotGate(target, frozenset(controls))

    if kind in _INVERTED:
        return template(_INVERTED[kind], operands, target) + [cx()]
    if kind is GateKind.AND:
        return [cx(*operands)]
    if kind is GateKind.OR:
        a, b = operands
        return [cx(a, b), cx(a), cx(b)]
    if kind is GateKind.XOR:
        a, b = operands
        return [cx(a), cx(b)]
    if kind is GateKind.NOT:
        return [cx(operands[0]), cx()]
    return [cx(operands[0])]  # FANOUT


_EVAL = {
    GateKind.AND: lambda a, b: a & b,
    GateKind.OR: lambda a, b: a | b,
    GateKind.NAND: lambda a, b: 1 ^ (a & b),
    GateKind.NOR: lambda a, b: 1 ^ (a | b),
    GateKind.XOR: lambda a, b: a ^ b,
    GateKind.XNOR: lambda a, b: 1 ^ a ^ b,
    GateKind.NOT: lambda a: 1 ^ a,
    GateKind.FANOUT: lambda a: a,
}


@dataclass(frozen=True)
class NetGate:
    kind: GateKind
    inputs: tuple
    output: str


@dataclass(frozen=True)
class Netlist:
    inputs: tuple
    gates: tuple
    outputs: tuple

    def fanout(self) -> dict:
        """Number of gate input slots reading each wire."""
        uses = {w: 0 for w in self.inputs}
        uses.update((g.output, 0) for g in self.gates)
        for g in self.gates:
            for w in g.inputs:
                uses[w] += 1
        return uses

    def evaluate(self, assignment) -> dict:
        """Classical values of the primary outputs.

        ``assignment`` maps input names to bits or to equal-length numpy
        arrays of bits (evaluated elementwise).
        """
        values = {w: assignment[w] for w in self.inputs}
        for g in self.gates:
            values[g.output] = _EVAL[g.kind](*(values[w] for w in g.inputs))
        return {w: values[w] for w in self.outputs}


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.\[\]]*$")


def _statements(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if stmt:
                yield lineno, stmt


def parse_netlist(text: str) -> Netlist:
    """Parse and validate a netlist, returning it in topological gate order.

    Gates may appear in any order as long as the wiring is acyclic; ties keep
    their textual order.
    """
    inputs, outputs, raw_gates = [], [], []
    for lineno, stmt in _statements(text):
        words = stmt.replace("=", " = ").split()
        if words[0] in ("input", "output"):
            names = words[1:]
            for name in names:
                if not _IDENT.match(name):
                    raise ParseError(f"bad wire name {name!r}", line=lineno)
            (inputs if words[0] == "input" else outputs).extend(names)
            continue
        if len(words) < 3 or words[1] != "=":
            raise ParseError(f"malformed statement {stmt!r}", line=lineno)
        wire, kind_name, args = words[0], words[2].upper(), words[3:]
        if not _IDENT.match(wire) or not all(_IDENT.match(a) for a in args):
            raise ParseError(f"bad wire name in {stmt!r}", line=lineno)
        try:
            kind = GateKind(kind_name)
        except ValueError:
            raise ParseError(f"unknown gate kind {words[2]!r}", line=lineno) from None
        if kind is GateKind.FANOUT:
            raise ParseError("FANOUT is inserted by the converter, not written", line=lineno)
        if len(args) != kind.arity:
            raise SemanticError(
                f"line {lineno}: {kind.value} takes {kind.arity} input(s), got {len(args)}")
        raw_gates.append(NetGate(kind, tuple(args), wire))

    if len(set(inputs)) != len(inputs):
        raise SemanticError("duplicate primary input")
    defined = set(inputs)
    for g in raw_gates:
        if g.output in defined:
            raise SemanticError(f"wire {g.output!r} defined more than once")
        defined.add(g.output)
    for g in raw_gates:
        for w in g.inputs:
            if w not in defined:
                raise SemanticError(f"undefined wire {w!r} used by {g.output!r}")
    for w in outputs:
        if w not in defined:
            raise SemanticError(f"undefined output wire {w!r}")
    if not outputs:
        raise SemanticError("netlist declares no outputs")

    return Netlist(tuple(inputs), _toposort(raw_gates, set(inputs)), tuple(outputs))


def _toposort(gates, primary):
    producer = {g.output: i for i, g in enumerate(gates)}
    pending = [0] * len(gates)
    consumers = [[] for _ in gates]
    for i, g in enumerate(gates):
        for w in set(g.inputs) - primary:
            pending[i] += 1
            consumers[producer[w]].append(i)
    ready = [i for i, p in enumerate(pending) if p == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(gates[i])
        for j in consumers[i]:
            pending[j] -= 1
            if pending[j] == 0:
                heapq.heappush(ready, j)
    if len(order) != len(gates):
        stuck = sorted(g.output for i, g in enumerate(gates) if pending[i])
        raise SemanticError(f"combinational cycle through {stuck}")
    return tuple(order)


@dataclass(frozen=True)
class QubitMap:
    """Where each netlist wire lives in the converted circuit."""

    wires: dict
    ancillas: int
    copies: dict = field(default_factory=dict)

    def __getitem__(self, wire):
        return self.wires[wire]

    def format(self) -> str:
        lines = [f"wire {w} {q}" for w, q in self.wires.items()]
        for w, qs in self.copies.items():
            lines.append(f"copy {w} {' '.join(map(str, qs))}")
        lines.append(f"ancillas {self.ancillas}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "QubitMap":
        wires, copies, ancillas = {}, {}, None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            words = raw.split("#", 1)[0].split()
            if not words:
                continue
            try:
                if words[0] == "wire" and len(words) == 3:
                    wires[words[1]] = int(words[2])
                elif words[0] == "copy" and len(words) >= 3:
                    copies[words[1]] = tuple(int(q) for q in words[2:])
                elif words[0] == "ancillas" and len(words) == 2:
                    ancillas = int(words[1])
                else:
                    raise ValueError
            except ValueError:
                raise ParseError(f"malformed qubit map line {raw!r}", line=lineno) from None
        if ancillas is None:
            raise ParseError("qubit map lacks 'ancillas' line")
        return cls(wires, ancillas, copies)


def convert(nl: Netlist, explicit_fanout: bool = False) -> tuple:
    """Reversible circuit for ``nl`` plus the wire-to-qubit map.

    Primary inputs take qubits ``1..p``; every gate adds one ancilla.  With
    ``explicit_fanout`` a wire read by ``w > 1`` gate inputs is first copied
    onto ``w - 1`` extra ancillas and each reader gets its own copy.
    """
    wires = {}
    copies = {}
    next_qubit = len(nl.inputs) + 1
    gates = []
    fanout = nl.fanout() if explicit_fanout else {}
    available = {}

    for q, w in enumerate(nl.inputs, start=1):
        wires[w] = q

    def make_copies(w):
        nonlocal next_qubit
        extra = []
        for _ in range(fanout.get(w, 0) - 1):
            gates.extend(template(GateKind.FANOUT, (wires[w],), next_qubit))
            extra.append(next_qubit)
            next_qubit += 1
        if extra:
            copies[w] = tuple(extra)
        available[w] = [wires[w]] + extra

    if explicit_fanout:
        for w in nl.inputs:
            make_copies(w)

    for g in nl.gates:
        if explicit_fanout:
            operands = tuple(available[w].pop(0) for w in g.inputs)
        else:
            operands = tuple(wires[w] for w in g.inputs)
        wires[g.output] = next_qubit
        next_qubit += 1
        gates.extend(template(g.kind, operands, wires[g.output]))
        if explicit_fanout:
            make_copies(g.output)

    width = next_qubit - 1
    qmap = QubitMap(wires, width - len(nl.inputs), copies)
    return Circuit(width, gates), qmap


@dataclass(frozen=True)
class Verdict:
    ok: bool
    checked: int
    counterexample: Optional[dict] = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"PASS: {self.checked} input assignments verified"
        return f"FAIL: {self.message}"


MAX_VERIFY_INPUTS = 16


def verify_conversion(nl: Netlist, c: Circuit, qmap: QubitMap) -> Verdict:
    """Exhaustively compare the circuit against classical evaluation.

    Every primary-input assignment is run with all ancillas at 0; the mapped
    output qubits must match the netlist and the input qubits must be
    unchanged.  The first input in ``nl.inputs`` is the most significant bit
    of the assignment index.
    """
    p = len(nl.inputs)
    if p > MAX_VERIFY_INPUTS:
        raise SemanticError(f"{p} primary inputs; exhaustive check limited to {MAX_VERIFY_INPUTS}")
    rows = np.arange(1 << p, dtype=np.int64)
    columns = {w: (rows >> (p - i)) & 1 for i, w in enumerate(nl.inputs, start=1)}
    start = np.zeros_like(rows)
    for w, col in columns.items():
        start |= col << (qmap[w] - 1)
    end = _run_array(c.gates, start)
    expected = nl.evaluate(columns)

    bad = np.zeros(rows.shape, dtype=bool)
    reasons = {}
    input_mask = sum(1 << (qmap[w] - 1) for w in nl.inputs)
    changed = (end & input_mask) != start
    bad |= changed
    for w in nl.outputs:
        got = (end >> (qmap[w] - 1)) & 1
        want = np.broadcast_to(np.asarray(expected[w]) & 1, rows.shape)
        bad |= got != want
    if not bad.any():
        return Verdict(True, len(rows))

    i = int(np.flatnonzero(bad)[0])
    assignment = {w: int(col[i]) for w, col in columns.items()}
    for w in nl.outputs:
        got = int((end[i] >> (qmap[w] - 1)) & 1)
        want = int(np.broadcast_to(np.asarray(expected[w]) & 1, rows.shape)[i])
        if got != want:
            reasons[w] = (want, got)
    parts = [f"{w}: expected {e}, got {g}" for w, (e, g) in reasons.items()]
    if changed[i]:
        parts.append("an input qubit was modified")
    text = ", ".join(f"{w}={b}" for w, b in assignment.items())
    return Verdict(False, i + 1, assignment, f"counterexample {text}: " + "; ".join(parts))
