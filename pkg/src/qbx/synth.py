"""Truth table to multi-controlled NOT circuit, in three stages.

1. :func:`stage1` emits one mixed-polarity gate per minterm.
2. :func:`stage2` rewrites every negative control ``~x`` as ``x ^ 1`` and
   multiplies out, so each gate becomes ``2**z`` positive-only gates.
3. :func:`stage3_minimize` cancels gates with identical control sets in pairs.

All gates share the ancilla as target, so they commute and stage 3 can work on
the multiset of control sets.  The fixed point is the positive-polarity
Reed-Muller expansion of the function, which :func:`anf` computes directly with
a Moebius butterfly; :func:`synthesize_fast` builds the circuit from it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .boolfn import BooleanFunction, minterms
from .circuit import Circuit, ControlledNotGate
from .errors import SemanticError

__all__ = [
    "XorPolynomial",
    "term_key",
    "stage1",
    "expand_gate",
    "stage2",
    "stage3_minimize",
    "synthesize",
    "moebius_transform",
    "anf",
    "anf_bruteforce",
    "synthesize_fast",
    "circuit_from_polynomial",
    "stage_counts",
]


def term_key(term):
    """Canonical order: more variables first, then lexicographic index list."""
    return (-len(term), sorted(term))


@dataclass(frozen=True)
class XorPolynomial:
    """XOR of products of positive literals.

    Each term is a frozenset of variable indices; the empty set is the
    constant 1.  Adding a term that is already present removes it.
    """

    terms: frozenset = frozenset()

    @classmethod
    def from_terms(cls, terms: Iterable) -> "XorPolynomial":
        counts = Counter(frozenset(t) for t in terms)
        return cls(frozenset(t for t, c in counts.items() if c & 1))

    def __xor__(self, other: "XorPolynomial") -> "XorPolynomial":
        return XorPolynomial(self.terms ^ other.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.canonical())

    def __contains__(self, term):
        return frozenset(term) in self.terms

    def canonical(self) -> list:
        return sorted(self.terms, key=term_key)

    def evaluate(self, bits) -> int:
        acc = 0
        for t in self.terms:
            if all(bits[i - 1] for i in t):
                acc ^= 1
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        return " ^ ".join(" ".join(f"x{i}" for i in sorted(t)) or "1"
                          for t in self.canonical())


def _single_target(c: Circuit):
    targets = c.targets()
    if len(targets) > 1:
        raise SemanticError(f"mixed targets {sorted(targets)}")
    return targets.pop() if targets else None


# --------------------------------------------------------------------------
# the staged pipeline


@lru_cache(maxsize=4096)
def _minterm_gate(config):
    pos = frozenset(i for i, b in enumerate(config, start=1) if b)
    neg = frozenset(i for i, b in enumerate(config, start=1) if not b)
    return ControlledNotGate(len(config) + 1, pos, neg)


def stage1(f: BooleanFunction) -> Circuit:
    return Circuit(f.arity + 1, [_minterm_gate(config) for config in minterms(f)])


def expand_gate(g: ControlledNotGate) -> list:
    """Positive-polarity gates equivalent to ``g``.

    Each negative control either stays as a positive control or is dropped,
    giving ``2**len(g.negative)`` gates in canonical order.
    """
    return list(_expand(g))


@lru_cache(maxsize=4096)
def _expand(g):
    neg = sorted(g.negative)
    terms = []
    for size in range(len(neg) + 1):
        for kept in combinations(neg, size):
            terms.append(g.positive | frozenset(kept))
    terms.sort(key=term_key)
    return tuple(ControlledNotGate(g.target, t) for t in terms)


def stage2(c: Circuit) -> Circuit:
    _single_target(c)
    gates = []
    for g in c.gates:
        gates.extend(expand_gate(g))
    return Circuit(c.width, gates)


def stage3_minimize(c: Circuit) -> Circuit:
    target = _single_target(c)
    if any(g.negative for g in c.gates):
        raise SemanticError("negative controls present; run stage2 first")
    poly = XorPolynomial.from_terms(g.positive for g in c.gates)
    if target is None:
        return Circuit(c.width)
    return circuit_from_polynomial(poly, c.width, target)


def synthesize(f: BooleanFunction) -> Circuit:
    return stage3_minimize(stage2(stage1(f)))


# --------------------------------------------------------------------------
# algebraic normal form


def moebius_transform(table) -> np.ndarray:
    """GF(2) Moebius (Reed-Muller) transform along the last axis.

    The last axis must have length ``2**k``.  The transform is its own
    inverse.  Leading axes are treated as a batch.
    """
    a = np.array(table, dtype=np.uint8, copy=True)
    size = a.shape[-1]
    if size & (size - 1):
        raise SemanticError(f"table length {size} is not a power of two")
    batch = a.shape[:-1]
    h = 1
    while h < size:
        view = a.reshape(batch + (size // (2 * h), 2, h))
        view[..., 1, :] ^= view[..., 0, :]
        h *= 2
    return a


def _term_of(index, arity):
    return frozenset(i for i in range(1, arity + 1) if (index >> (arity - i)) & 1)


def anf(f: BooleanFunction) -> XorPolynomial:
    coeffs = moebius_transform(f.to_array())
    return XorPolynomial(frozenset(_term_of(int(m), f.arity)
                                   for m in np.flatnonzero(coeffs)))


def anf_bruteforce(f: BooleanFunction) -> XorPolynomial:
    """Reference ANF: coefficient of S is the XOR of f over rows inside S.

    Quadratic in the table size; meant only as an independent check.
    """
    k = f.arity
    terms = []
    for s in range(1 << k):
        acc = 0
        for row in range(1 << k):
            if row & ~s == 0:
                acc ^= f.outputs[row]
        if acc:
            terms.append(_term_of(s, k))
    return XorPolynomial(frozenset(terms))


def circuit_from_polynomial(poly: XorPolynomial, width: int, target: int) -> Circuit:
    return Circuit(width, [ControlledNotGate(target, t) for t in poly.canonical()])


def synthesize_fast(f: BooleanFunction) -> Circuit:
    return circuit_from_polynomial(anf(f), f.arity + 1, f.arity + 1)


def stage_counts(f: BooleanFunction) -> tuple:
    """Gate counts after stages 1, 2 and 3 without materializing the stages."""
    ones = [i for i, v in enumerate(f.outputs) if v]
    s2 = sum(1 << (f.arity - bin(i).count("1")) for i in ones)
    return len(ones), s2, int(moebius_transform(f.to_array()).sum())
