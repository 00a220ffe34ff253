"""The minimized circuit is the positive-polarity Reed-Muller (ANF) expansion."""

import numpy as np

from qbx import anf, function_from_table_text, synthesize, synthesize_fast
from qbx.synth import moebius_transform

for table in ["11110001", "00110110", "01010111", "0110100110010110"]:
    f = function_from_table_text(table)
    poly = anf(f)
    staged = synthesize(f)
    fast = synthesize_fast(f)
    print(f"{table:>16}  ANF = {str(poly):<28} gates = {len(staged)}  "
          f"staged == fast: {staged == fast}")

# The GF(2) Moebius butterfly is its own inverse: transforming the
# coefficient vector gives the truth table back.
table = function_from_table_text("01010111").to_array()
coeffs = moebius_transform(table)
print("\ncoefficients:", coeffs, " back:", moebius_transform(coeffs))
assert np.array_equal(moebius_transform(coeffs), table)
