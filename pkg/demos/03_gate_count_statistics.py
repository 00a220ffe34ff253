"""How many gates does the final circuit need, over all functions of a width?"""

from math import comb

from qbx import enumerate_all, sample_distribution
from qbx.analysis import exact_decimal

for n in (2, 3, 4, 5):
    report = enumerate_all(n)
    binomial = tuple(comb(report.N, r) for r in range(report.N + 1))
    print(f"n={n}: S={report.S:>6}  counts={report.counts}  binomial: {report.counts == binomial}")

# Exact probabilities, printed as finite decimals.
r3, r4 = enumerate_all(3), enumerate_all(4)
print("\n3 qubits: p(0 gates) =", exact_decimal(r3.probability(0)),
      " p(1..3 gates) =", exact_decimal(r3.probability_of(r3.average_case())))
print("4 qubits: p(8 gates) =", exact_decimal(r4.probability(8)),
      " p(3..5 gates) =", exact_decimal(r4.probability_of(r4.average_case())))

# Beyond 5 qubits the function space is too large to list; sample it.
sampled = sample_distribution(7, 20000, seed=42)
print("\n7 qubits, 20000 random tables: mean gates =", float(sampled.mean()),
      "(N/2 =", sampled.N // 2, ")")

# The same report as a text table, for 3 qubits.
print(r3.to_text())
