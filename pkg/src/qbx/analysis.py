"""Distribution of final gate counts over the space of Boolean functions.

For ``n`` qubits there are ``N = 2**(n-1)`` truth-table rows and ``S = 2**N``
functions.  The final circuit for a function has one gate per term of its
Reed-Muller expansion, and the expansion is a bijection between functions and
term subsets, so exhaustive counts come out as ``C(N, r)``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .boolfn import MAX_ARITY, BooleanFunction
from .circuit import computed_function
from .errors import SemanticError, VerificationError
from .synth import moebius_transform, synthesize_fast

__all__ = [
    "MAX_EXHAUSTIVE_ARITY",
    "DEFAULT_SEED",
    "DistributionReport",
    "enumerate_all",
    "sample_distribution",
    "exact_decimal",
    "default_workers",
]

MAX_EXHAUSTIVE_ARITY = 4
DEFAULT_SEED = 0
_CHUNK = 1 << 14


def default_workers() -> int:
    """Worker cap from ``QBX_THREADS`` (defaults to 1)."""
    try:
        return max(1, int(os.environ.get("QBX_THREADS", "1")))
    except ValueError:
        return 1


def exact_decimal(p: Fraction) -> str:
    """Finite decimal expansion of ``p`` if one exists, else ``"a/b"``."""
    den = p.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{p.numerator}/{p.denominator}"
    digits = max(twos, fives)
    scaled = p * 10**digits
    assert scaled.denominator == 1
    whole, frac = divmod(scaled.numerator, 10**digits)
    if digits == 0:
        return str(whole)
    return f"{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class DistributionReport:
    n: int
    counts: tuple
    mode: str = "exhaustive"
    sample_size: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.N + 1:
            raise SemanticError(f"expected {self.N + 1} count buckets, got {len(self.counts)}")
        if self.mode not in ("exhaustive", "sampled"):
            raise SemanticError(f"unknown mode {self.mode!r}")
        expected = self.S if self.mode == "exhaustive" else self.sample_size
        if sum(self.counts) != expected:
            raise SemanticError(f"counts sum to {sum(self.counts)}, expected {expected}")

    @property
    def N(self) -> int:
        return 1 << (self.n - 1)

    @property
    def S(self) -> int:
        return 1 << self.N

    @property
    def total(self) -> int:
        return sum(self.counts)

    def probability(self, r: int) -> Fraction:
        if not 0 <= r <= self.N:
            return Fraction(0)
        return Fraction(self.counts[r], self.total)

    def probability_of(self, rs: Iterable[int]) -> Fraction:
        return sum((self.probability(r) for r in set(rs)), Fraction(0))

    def average_case(self) -> tuple:
        """Gate counts within one of ``2**(n-2)``, clipped to ``0..N``."""
        mid = self.N // 2
        return tuple(r for r in (mid - 1, mid, mid + 1) if 0 <= r <= self.N)

    def mean(self) -> Fraction:
        return Fraction(sum(r * c for r, c in enumerate(self.counts)), self.total)

    def header(self) -> str:
        if self.mode == "exhaustive":
            how = "exhaustive"
        else:
            how = f"sampled size={self.sample_size} seed={self.seed}"
        return (f"n={self.n} N={self.N} S={self.S} mode={how}; "
                f"average case r in {{{', '.join(map(str, self.average_case()))}}} "
                f"(2^(n-2) plus or minus 1)")

    def to_text(self) -> str:
        rows = [f"# {self.header()}", f"{'r':>4} {'count':>12}  probability"]
        for r, c in enumerate(self.counts):
            rows.append(f"{r:>4} {c:>12}  {exact_decimal(self.probability(r))}")
        avg = self.average_case()
        rows.append(f"# p(r=0) = {exact_decimal(self.probability(0))}")
        rows.append(f"# p(r=N) = {exact_decimal(self.probability(self.N))}")
        rows.append(f"# p(average case) = {exact_decimal(self.probability_of(avg))}")
        rows.append(f"# mean r = {exact_decimal(self.mean())}")
        return "\n".join(rows) + "\n"

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "N": self.N,
            "S": self.S,
            "mode": self.mode,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "counts": {str(r): c for r, c in enumerate(self.counts)},
            "average_case": list(self.average_case()),
            "p_zero": exact_decimal(self.probability(0)),
            "p_worst": exact_decimal(self.probability(self.N)),
            "p_average": exact_decimal(self.probability_of(self.average_case())),
            "mean": exact_decimal(self.mean()),
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "DistributionReport":
        doc = json.loads(text)
        n = int(doc["n"])
        counts = [0] * ((1 << (n - 1)) + 1)
        for r, c in doc["counts"].items():
            counts[int(r)] = int(c)
        return cls(n, tuple(counts), doc["mode"], doc.get("sample_size"), doc.get("seed"))


def _tables(arity, start, stop):
    size = 1 << arity
    codes = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(size - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.uint8)


def _histogram(tables, size):
    sizes = moebius_transform(tables).sum(axis=1, dtype=np.int64)
    return np.bincount(sizes, minlength=size + 1)


def _exhaustive_chunk(arity, start, stop, verify):
    tables = _tables(arity, start, stop)
    if verify:
        for code, row in zip(range(start, stop), tables):
            f = BooleanFunction(arity, row)
            if computed_function(synthesize_fast(f), arity) != f:
                raise VerificationError(f"circuit for table {code:0{1 << arity}b} is wrong")
    return _histogram(tables, 1 << arity)


def _run_chunks(jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: job(), jobs))


def enumerate_all(n: int, *, verify: bool = False,
                  workers: Optional[int] = None) -> DistributionReport:
    """Exact gate-count distribution over every function on ``n`` qubits.

    With ``verify`` each function's circuit is also simulated and checked
    against its truth table.  Chunks may run on ``workers`` threads; the
    merged counts do not depend on the partition.
    """
    if n < 1:
        raise SemanticError("need at least one qubit")
    arity = n - 1
    if arity > MAX_EXHAUSTIVE_ARITY:
        raise SemanticError(
            f"{n} qubits means 2^{1 << arity} functions; too many for exhaustive "
            f"enumeration (n <= {MAX_EXHAUSTIVE_ARITY + 1}), use sample_distribution")
    total = 1 << (1 << arity)
    jobs = [
        (lambda a=a, b=min(a + _CHUNK, total): _exhaustive_chunk(arity, a, b, verify))
        for a in range(0, total, _CHUNK)
    ]
    parts = _run_chunks(jobs, workers or default_workers())
    counts = np.sum(parts, axis=0)
    return DistributionReport(n, tuple(int(c) for c in counts))


def sample_distribution(n: int, sample_size: int, seed: int = DEFAULT_SEED) -> DistributionReport:
    """Gate-count histogram over ``sample_size`` uniformly random truth tables.

    Deterministic for a given ``seed``; tables are drawn in a fixed order
    regardless of chunking.
    """
    if sample_size < 1:
        raise SemanticError("sample_size must be >= 1")
    if not 1 <= n <= MAX_ARITY + 1:
        raise SemanticError(f"n must be in 1..{MAX_ARITY + 1}")
    size = 1 << (n - 1)
    rng = np.random.default_rng(seed)
    rows_per_chunk = max(1, (1 << 22) // size)
    counts = np.zeros(size + 1, dtype=np.int64)
    done = 0
    while done < sample_size:
        m = min(rows_per_chunk, sample_size - done)
        tables = rng.integers(0, 2, size=(m, size), dtype=np.uint8)
        counts += _histogram(tables, size)
        done += m
    return DistributionReport(n, tuple(int(c) for c in counts), "sampled", sample_size, seed)
