import itertools

import numpy as np
import pytest

from qbx.circuit import (Circuit, ControlledNotGate, apply_gate, ascii_diagram,
                         computed_function, format_circuit, parse_circuit, run, run_all)
from qbx.errors import ParseError, SemanticError, VerificationError

MINTERMS = """\
qubits 4
cnot 4 -1 -2 -3
cnot 4 -1 -2 +3
cnot 4 -1 +2 -3
cnot 4 -1 +2 +3
cnot 4 +1 +2 +3
"""

FINAL = """\
qubits 4
cnot 4 +1 +2 +3
cnot 4 +1
cnot 4
"""


def gate(target, pos=(), neg=()):
    return ControlledNotGate(target, frozenset(pos), frozenset(neg))


MIXED = gate(4, (1, 3), (2,))


class TestApplyGate:
    def test_mixed_gate_fires(self):
        assert apply_gate(MIXED, "1011") == (1, 0, 1, 0)

    def test_mixed_gate_condition_fails(self):
        assert apply_gate(MIXED, "1111") == (1, 1, 1, 1)

    def test_unconditional_not(self):
        assert apply_gate(gate(1), "0") == (1,)

    def test_mixed_gate_truth_table(self):
        # x4 -> x4 ^ x1 ~x2 x3
        for bits in itertools.product((0, 1), repeat=4):
            x1, x2, x3, x4 = bits
            assert apply_gate(MIXED, bits) == (x1, x2, x3, x4 ^ (x1 & (1 - x2) & x3))

    def test_gate_too_wide_for_state(self):
        with pytest.raises(SemanticError):
            apply_gate(MIXED, "101")


class TestGateInvariants:
    def test_target_in_controls(self):
        with pytest.raises(SemanticError):
            gate(2, (2,))
        with pytest.raises(SemanticError):
            gate(2, (), (2,))

    def test_overlapping_polarity(self):
        with pytest.raises(SemanticError):
            gate(3, (1,), (1,))

    def test_zero_index(self):
        with pytest.raises(SemanticError):
            gate(0)

    def test_circuit_width(self):
        with pytest.raises(SemanticError):
            Circuit(3, [MIXED])


class TestRun:
    def test_empty_is_identity(self):
        assert run(Circuit(3), "101") == (1, 0, 1)

    def test_minterm_circuit_row0(self):
        assert run(parse_circuit(MINTERMS), "0000") == (0, 0, 0, 1)

    def test_minterm_circuit_row4(self):
        assert run(parse_circuit(MINTERMS), "1000") == (1, 0, 0, 0)

    def test_width_mismatch(self):
        with pytest.raises(SemanticError):
            run(parse_circuit(MINTERMS), "000")

    def test_run_all_matches_run(self):
        c = parse_circuit(MINTERMS)
        images = run_all(c)
        for s in range(16):
            bits = tuple((s >> i) & 1 for i in range(4))
            out = run(c, bits)
            assert images[s] == sum(b << i for i, b in enumerate(out))


class TestComputedFunction:
    def test_minterm_circuit(self):
        assert str(computed_function(parse_circuit(MINTERMS), 3)) == "11110001"

    def test_final_circuit(self):
        assert str(computed_function(parse_circuit(FINAL), 3)) == "11110001"

    def test_empty(self):
        assert str(computed_function(Circuit(3), 2)) == "0000"

    def test_single_not(self):
        assert str(computed_function(Circuit(3, [gate(3)]), 2)) == "1111"

    def test_other_target(self):
        # target on qubit 1; inputs are qubits 2, 3
        c = Circuit(3, [gate(1, (2, 3))])
        assert str(computed_function(c, 2, target=1)) == "0001"

    def test_not_function_preserving(self):
        c = Circuit(3, [gate(1, (2,))])
        with pytest.raises(VerificationError, match="not function-preserving"):
            computed_function(c, 2)


class TestTextFormat:
    def test_mixed_gate(self):
        c = parse_circuit("qubits 4\ncnot 4 +1 -2 +3")
        assert c == Circuit(4, [MIXED])

    def test_bare_not(self):
        assert parse_circuit("qubits 1\ncnot 1") == Circuit(1, [gate(1)])

    def test_round_trip(self):
        for text in (MINTERMS, FINAL, "qubits 0\n", "qubits 2\ncnot 1 -2\ncnot 2\n"):
            assert format_circuit(parse_circuit(text)) == text

    def test_controls_sorted(self):
        c = parse_circuit("qubits 5\ncnot 2 +5 -1 +3")
        assert format_circuit(c) == "qubits 5\ncnot 2 -1 +3 +5\n"

    def test_comments(self):
        c = parse_circuit("# hello\nqubits 2 # width\n\ncnot 2 +1 # cx\n")
        assert c == Circuit(2, [gate(2, (1,))])
        text = format_circuit(c, ["note"])
        assert text.startswith("# note\n") and parse_circuit(text) == c

    @pytest.mark.parametrize("text, line", [
        ("qubits 3\ncnot 3 +1 -1", 2),
        ("qubits 3\ncnot 3 +3", 2),
        ("qubits 3\ncnot 3 +4", 2),
        ("qubits 3\ncnot 4", 2),
        ("qubits 3\ntoffoli 3 +1 +2", 2),
        ("qubits 3\ncnot 3 1", 2),
        ("cnot 1", 1),
        ("qubits x", 1),
    ])
    def test_errors(self, text, line):
        with pytest.raises(ParseError) as err:
            parse_circuit(text)
        assert err.value.line == line

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_circuit("# nothing\n")


def test_run_all_is_permutation():
    c = parse_circuit(MINTERMS)
    images = run_all(c)
    assert np.array_equal(np.sort(images), np.arange(16))


def test_ascii_diagram_shape():
    lines = ascii_diagram(parse_circuit(FINAL)).splitlines()
    assert len(lines) == 4
    assert lines[3].count("X") == 3
