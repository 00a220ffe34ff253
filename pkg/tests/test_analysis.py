from fractions import Fraction
from math import comb

import pytest

from qbx.analysis import (DistributionReport, enumerate_all, exact_decimal,
                          sample_distribution)
from qbx.boolfn import functions_of_arity
from qbx.errors import SemanticError
from qbx.synth import synthesize


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_binomial_counts(n):
    report = enumerate_all(n)
    big_n = 2 ** (n - 1)
    assert report.counts == tuple(comb(big_n, r) for r in range(big_n + 1))
    assert report.S == 2 ** big_n


def test_two_qubits_through_pipeline():
    # every 1-input function, pushed through the staged pipeline
    counts = [0, 0, 0]
    for f in functions_of_arity(1):
        counts[len(synthesize(f))] += 1
    assert counts == [1, 2, 1]
    assert enumerate_all(2).counts == (1, 2, 1)


def test_three_qubit_probabilities():
    r = enumerate_all(3)
    assert r.S == 16
    assert r.counts == (1, 4, 6, 4, 1)
    assert r.probability(4) == r.probability(0) == Fraction(1, 16)
    assert r.average_case() == (1, 2, 3)
    assert r.probability_of(r.average_case()) == Fraction(7, 8)
    assert exact_decimal(r.probability(0)) == "0.0625"


def test_four_qubit_probabilities():
    r = enumerate_all(4)
    assert r.S == 256
    assert exact_decimal(r.probability(8)) == "0.00390625"
    assert exact_decimal(r.probability_of(r.average_case())) == "0.7109375"


def test_probabilities_sum_to_one():
    for n in range(1, 6):
        r = enumerate_all(n)
        assert sum(r.probability(k) for k in range(r.N + 1)) == 1


def test_verify_sweep():
    assert enumerate_all(4, verify=True) == enumerate_all(4)


def test_partition_independent(monkeypatch):
    import qbx.analysis as analysis
    whole = enumerate_all(5)
    monkeypatch.setattr(analysis, "_CHUNK", 1000)
    assert enumerate_all(5, workers=1) == whole
    assert enumerate_all(5, workers=4) == whole


def test_too_large():
    with pytest.raises(SemanticError, match="sample"):
        enumerate_all(6)


def test_sample_deterministic():
    a = sample_distribution(5, 10000, seed=42)
    b = sample_distribution(5, 10000, seed=42)
    assert a == b
    assert a.total == 10000
    assert a.counts[-1] == 0  # worst case has probability 2**-16


def test_sample_mean_three_qubits():
    r = sample_distribution(3, 200000, seed=1)
    assert abs(float(r.mean()) - 2.0) < 0.02


def test_sample_chunking_irrelevant(monkeypatch):
    # a large n forces several chunks; the report must still be reproducible
    r1 = sample_distribution(20, 9, seed=5)
    assert r1 == sample_distribution(20, 9, seed=5)
    assert r1.total == 9


def test_sample_size_validation():
    with pytest.raises(SemanticError):
        sample_distribution(3, 0)


def test_json_round_trip():
    for r in (enumerate_all(3), sample_distribution(4, 500, seed=9)):
        assert DistributionReport.from_json(r.to_json()) == r


def test_text_report():
    text = enumerate_all(4).to_text()
    assert "0.7109375" in text
    assert "0.00390625" in text
    assert text.startswith("# n=4 N=8 S=256")


@pytest.mark.parametrize("p, text", [
    (Fraction(7, 8), "0.875"), (Fraction(1), "1"), (Fraction(0), "0"),
    (Fraction(1, 3), "1/3"), (Fraction(3, 20), "0.15"),
])
def test_exact_decimal(p, text):
    assert exact_decimal(p) == text


def test_report_invariants():
    with pytest.raises(SemanticError):
        DistributionReport(3, (1, 4, 6, 4))
    with pytest.raises(SemanticError):
        DistributionReport(3, (1, 4, 6, 4, 2))
