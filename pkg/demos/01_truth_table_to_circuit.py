"""From a Boolean expression to a multi-controlled NOT circuit, stage by stage."""

from qbx import (computed_function, expression_to_function, format_circuit, format_table,
                 parse_expression, stage1, stage2, stage3_minimize)
from qbx.circuit import ascii_diagram

# F(x1, x2, x3) = ~x1 + x2 x3, evaluated into an explicit truth table.
# Row 0 is x1 x2 x3 = 000 and x1 is the most significant bit.
expr = parse_expression("~x1 + x2 x3")
f = expression_to_function(expr, 3)
print("truth table:", format_table(f))

# Stage 1: one gate per row where F = 1, controls follow the row's bits
# (+i fires on 1, -i fires on 0).  The ancilla, qubit 4, is the target.
c1 = stage1(f)
print("\nstage 1 --", len(c1), "gates")
print(format_circuit(c1), end="")

# Stage 2: every negative control ~xi becomes xi ^ 1 and the product is
# multiplied out, so each gate turns into 2**(negative controls) gates.
c2 = stage2(c1)
print("\nstage 2 --", len(c2), "positive-only gates")

# Stage 3: gates on the same target commute, so identical control sets
# cancel in pairs wherever they sit in the list.
c3 = stage3_minimize(c2)
print("\nstage 3 --", len(c3), "gates")
print(format_circuit(c3), end="")
print(ascii_diagram(c3))

# Run all 8 inputs with the ancilla at 0 and read the ancilla back.
print("\ncircuit computes:", format_table(computed_function(c3, 3)))
