"""Reversible circuits of multi-controlled NOT gates for Boolean functions."""

from .analysis import DistributionReport, enumerate_all, sample_distribution
from .boolfn import (BooleanFunction, expression_to_function, format_table,
                     function_from_table_text, minterms, parse_expression)
from .circuit import (Circuit, ControlledNotGate, apply_gate, computed_function,
                      format_circuit, parse_circuit, run)
from .errors import ParseError, QbxError, SemanticError, VerificationError
from .reversible import GateKind, convert, parse_netlist, template, verify_conversion
from .synth import (XorPolynomial, anf, expand_gate, stage1, stage2, stage3_minimize,
                    synthesize, synthesize_fast)

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction", "Circuit", "ControlledNotGate", "DistributionReport", "GateKind",
    "ParseError", "QbxError", "SemanticError", "VerificationError", "XorPolynomial",
    "anf", "apply_gate", "computed_function", "convert", "enumerate_all",
    "expand_gate", "expression_to_function", "format_circuit", "format_table",
    "function_from_table_text", "minterms", "parse_circuit", "parse_expression",
    "parse_netlist", "run", "sample_distribution", "stage1", "stage2",
    "stage3_minimize", "synthesize", "synthesize_fast", "template", "verify_conversion",
]
