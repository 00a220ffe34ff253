"""Convert a classical full adder into a reversible controlled-NOT circuit."""

from qbx import convert, format_circuit, parse_netlist, verify_conversion
from qbx.circuit import Circuit

FULL_ADDER = """
input a b cin
t = XOR a b
s = XOR t cin
c1 = AND a b
c2 = AND t cin
cout = OR c1 c2
output s cout
"""

nl = parse_netlist(FULL_ADDER)

# Controls are not consumed, so by default a wire simply controls every
# fragment that reads it.
circuit, qmap = convert(nl)
print(format_circuit(circuit, qmap.format().splitlines()))
print(verify_conversion(nl, circuit, qmap))

# With explicit fan-out each extra reader gets its own copy of the wire.
circuit2, qmap2 = convert(nl, explicit_fanout=True)
print(f"\nexplicit fan-out: {circuit2.width} qubits instead of {circuit.width}, copies {qmap2.copies}")
print(verify_conversion(nl, circuit2, qmap2))

# Dropping a gate is caught with a concrete counterexample.
broken = Circuit(circuit.width, circuit.gates[:-1])
print("\n" + str(verify_conversion(nl, broken, qmap)))
