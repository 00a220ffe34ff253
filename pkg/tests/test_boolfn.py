import itertools

import pytest

from qbx.boolfn import (And, BooleanFunction, Const, Not, Or, Var, Xor, configuration,
                        evaluate, expression_to_function, format_table,
                        function_from_table_text, functions_of_arity, minterms,
                        parse_expression)
from qbx.errors import ParseError, SemanticError


def rows(k):
    return list(itertools.product((0, 1), repeat=k))


class TestParse:
    def test_not_x1_or_x2x3(self):
        assert parse_expression("~x1 + x2 x3") == Or((Not(Var(1)), And((Var(2), Var(3)))))

    def test_single_variable(self):
        assert parse_expression("x1") == Var(1)

    def test_product_of_sums(self):
        e = parse_expression("(x1 + x3)(~x1 + x2 + x3)")
        assert e == And((Or((Var(1), Var(3))), Or((Not(Var(1)), Var(2), Var(3)))))

    @pytest.mark.parametrize("text", ["x1 x2", "x1*x2", "x1x2", "  x1   *   x2 "])
    def test_and_spellings(self, text):
        assert parse_expression(text) == And((Var(1), Var(2)))

    def test_precedence(self):
        # NOT > AND > XOR > OR
        e = parse_expression("x1 + x2 ^ x3 x4 + ~x5")
        assert e == Or((Var(1), Xor((Var(2), And((Var(3), Var(4))))), Not(Var(5))))

    def test_constants_and_double_negation(self):
        assert parse_expression("~~1 0") == And((Not(Not(Const(1))), Const(0)))

    def test_str_round_trip(self):
        for text in ["~x1 + x2 x3", "(x1 + x3) (~x1 + x2 + x3)", "x1 ^ x2 x3 ^ 1",
                     "~(x1 + x2)", "(x1 ^ x2) x3"]:
            e = parse_expression(text)
            assert parse_expression(str(e)) == e

    @pytest.mark.parametrize("text, pos", [
        ("x0", 0), ("x1 +", 4), ("(x1", 3), ("x1 $ x2", 3), ("", 0), ("x1 )", 3), ("2", 0),
    ])
    def test_syntax_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as err:
            parse_expression(text)
        assert err.value.position == pos


class TestTruthTables:
    def test_not_x1_or_x2x3_table(self):
        f = expression_to_function(parse_expression("~x1 + x2 x3"), 3)
        assert list(f.outputs) == [1, 1, 1, 1, 0, 0, 0, 1]

    def test_constant(self):
        f = expression_to_function(Const(1), 2)
        assert list(f.outputs) == [1, 1, 1, 1]

    def test_karnaugh_example(self):
        # brute-force oracle written directly in Python
        def oracle(x1, x2, x3):
            return int(((not x1) and x2) or (x2 and not x3) or (x1 and not x2 and x3))
        expected = [oracle(*r) for r in rows(3)]
        assert expected == [0, 0, 1, 1, 0, 1, 1, 0]
        f = expression_to_function(parse_expression("~x1 x2 + x2 ~x3 + x1 ~x2 x3"), 3)
        assert list(f.outputs) == expected

    def test_unused_trailing_variables(self):
        f = expression_to_function(parse_expression("x1"), 3)
        assert format_table(f) == "00001111"

    def test_arity_too_small(self):
        with pytest.raises(SemanticError):
            expression_to_function(parse_expression("x4"), 3)

    def test_vectorized_agrees_with_rowwise(self):
        e = parse_expression("~x1 x2 ^ x3 (x4 + ~x2) + x5 x6 ~x1")
        for k in range(6, 8):
            f = expression_to_function(e, k)
            assert [f(*r) for r in rows(k)] == [evaluate(e, r) for r in rows(k)]

    @pytest.mark.parametrize("text, arity, table", [
        ("11110001", 3, "11110001"),
        ("01", 1, "01"),
        ("0110", 2, "0110"),
        ("# comment\n1111 0001\n  # more\n", 3, "11110001"),
    ])
    def test_table_text(self, text, arity, table):
        f = function_from_table_text(text)
        assert f.arity == arity
        assert format_table(f) == table

    @pytest.mark.parametrize("text", ["111", "", "0120", "11x1"])
    def test_table_text_errors(self, text):
        with pytest.raises(ParseError):
            function_from_table_text(text)

    def test_round_trip_all_small(self):
        for k in range(4):
            for f in functions_of_arity(k):
                assert function_from_table_text(format_table(f)) == f

    def test_identity_function(self):
        f = function_from_table_text("01")
        assert f(0) == 0 and f(1) == 1

    def test_from_int_matches_text(self):
        assert BooleanFunction.from_int(3, 0b11110001) == function_from_table_text("11110001")
        assert BooleanFunction.from_int(3, 0b11110001).to_int() == 0xF1

    def test_invariants(self):
        with pytest.raises(SemanticError):
            BooleanFunction(2, [0, 1, 1])
        with pytest.raises(SemanticError):
            BooleanFunction(1, [0, 2])
        with pytest.raises(SemanticError):
            BooleanFunction(-1, [0])


class TestMinterms:
    def test_minterm_rows(self):
        f = function_from_table_text("11110001")
        assert minterms(f) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 1)]

    def test_constant_zero(self):
        assert minterms(BooleanFunction.constant(3, 0)) == []

    def test_and(self):
        assert minterms(function_from_table_text("0001")) == [(1, 1)]

    def test_count_matches_ones(self):
        for f in functions_of_arity(3):
            assert len(minterms(f)) == sum(f.outputs)

    def test_configuration_msb_first(self):
        assert configuration(4, 3) == (1, 0, 0)
        assert configuration(1, 3) == (0, 0, 1)
