import math

import pytest

from epc import (DivergenceError, DthRedundancy, ExplicitFinite,
                 ExplicitTailed, Exponential, Geometric, LengthSeq, Linear,
                 MaxRedundancy, Poisson, UnaryTail, evaluate_penalty,
                 expected_length, point_mass, power_sum, renyi_entropy,
                 shannon_entropy, tail_weight, total_mass,
                 with_geometric_tail)
from oracles import geometric_pmf, poisson_pmf, unary_tail_power_sum_direct

UNARY = LengthSeq((), UnaryTail(0, 1))


def test_model_validation():
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            Geometric(bad)
    with pytest.raises(ValueError):
        Poisson(0.0)
    with pytest.raises(ValueError):
        ExplicitFinite((0.5, 0.4))      # does not sum to one
    with pytest.raises(ValueError):
        ExplicitFinite((1.2, -0.2))


def test_point_mass():
    g = Geometric(0.7)
    for i in range(10):
        assert point_mass(g, i) == pytest.approx(geometric_pmf(0.7, i), rel=1e-14)
    p = Poisson(2.5)
    for i in range(12):
        exact = math.exp(-2.5) * 2.5 ** i / math.factorial(i)
        assert point_mass(p, i) == pytest.approx(exact, rel=1e-12)
    f = ExplicitFinite((0.25, 0.75))
    assert point_mass(f, 1) == 0.75
    with pytest.raises(IndexError):
        point_mass(f, 2)


def test_explicit_tailed_point_mass_needs_pmf():
    m = ExplicitTailed(head=(0.5, 0.25), tail_sum=lambda j, a: 0.0)
    assert point_mass(m, 1) == 0.25
    with pytest.raises(ValueError):
        point_mass(m, 2)
    g = with_geometric_tail((0.5, 0.25), 0.5)
    assert point_mass(g, 3) == pytest.approx(0.0625)


def test_with_geometric_tail_mass_and_sums():
    m = with_geometric_tail((0.6, 0.15, 0.15, 0.0375, 0.0375), 0.5)
    # geometric continuation from the last head value
    direct = math.fsum(0.0375 * 0.5 ** (i - 4) for i in range(5, 60))
    assert m.tail_sum(4, 1.0) == pytest.approx(direct, abs=1e-15)
    assert total_mass(m) == pytest.approx(1.0125)
    # weighted tail sums against brute force, both regimes of a
    for a in (0.5, 1.0, 1.5):
        direct = math.fsum(point_mass(m, i) * a ** (i - 4) for i in range(5, 200))
        assert tail_weight(m, 4, a) == pytest.approx(direct, rel=1e-12)
    with pytest.raises(DivergenceError):
        tail_weight(m, 4, 2.0)      # a * ratio = 1


def test_tail_weight_geometric():
    g = Geometric(0.6)
    for j in (-1, 0, 3):
        for a in (0.5, 1.0, 1.4):
            direct = math.fsum(geometric_pmf(0.6, i) * a ** (i - j)
                               for i in range(j + 1, j + 2000))
            assert tail_weight(g, j, a) == pytest.approx(direct, rel=1e-12)
    assert tail_weight(g, -1, 1.0) == pytest.approx(1.0)
    with pytest.raises(DivergenceError):
        tail_weight(g, 2, 1.0 / 0.6)


def test_tail_weight_poisson():
    p = Poisson(1.0)
    assert tail_weight(p, 2, 1.0) == pytest.approx(1 - 2.5 * math.exp(-1), rel=1e-12)
    for j, a in [(2, 2.0), (2, 0.5), (5, 3.0), (-1, 1.0)]:
        direct = math.fsum(poisson_pmf(1.0, i) * a ** (i - j)
                           for i in range(j + 1, j + 120))
        assert tail_weight(p, j, a) == pytest.approx(direct, rel=1e-11)


def test_length_seq_validation():
    with pytest.raises(ValueError):
        LengthSeq((0, 2))                        # lengths are positive
    with pytest.raises(ValueError):
        LengthSeq((1, 1, 1))                     # Kraft > 1
    with pytest.raises(ValueError):
        LengthSeq((1,), UnaryTail(3, 2))         # tail must start right after
    with pytest.raises(ValueError):
        UnaryTail(0, 0)
    seq = LengthSeq((1, 2), UnaryTail(2, 3))
    assert [seq.length_at(i) for i in range(5)] == [1, 2, 3, 4, 5]
    assert seq.kraft_sum() == pytest.approx(1.0)


def test_power_sum_against_direct():
    g = Geometric(0.6)
    seq = LengthSeq((1, 2), UnaryTail(2, 3))
    for a in (0.5, 1.0, 1.3):
        direct = unary_tail_power_sum_direct(lambda i: geometric_pmf(0.6, i),
                                             (1, 2), 2, 3, a, 0.6)
        assert power_sum(g, seq, a) == pytest.approx(direct, rel=1e-12)
    with pytest.raises(DivergenceError):
        power_sum(g, seq, 1.7)      # 0.6 * 1.7 > 1
    f = ExplicitFinite((0.25, 0.25, 0.5))
    fin = LengthSeq((2, 2, 1))
    assert power_sum(f, fin, 2.0) == pytest.approx(0.25 * 4 + 0.25 * 4 + 0.5 * 2)


def test_expected_length_closed_forms():
    g = Geometric(0.5)
    assert expected_length(g, UNARY) == pytest.approx(2.0, rel=1e-12)
    p = Poisson(1.0)
    direct = math.fsum(poisson_pmf(1.0, i) * (i + 1) for i in range(80))
    assert expected_length(p, UNARY) == pytest.approx(direct, rel=1e-12)
    t = with_geometric_tail((0.5, 0.25), 0.5)
    seq = LengthSeq((1, 2), UnaryTail(2, 3))
    direct = math.fsum(point_mass(t, i) * seq.length_at(i) for i in range(90))
    assert expected_length(t, seq) == pytest.approx(direct, rel=1e-12)


def test_evaluate_penalty_routes():
    g = Geometric(0.5)
    assert evaluate_penalty(g, UNARY, Linear()) == \
        evaluate_penalty(g, UNARY, Exponential(1.0))
    # exponential penalty by direct sum
    val = evaluate_penalty(g, UNARY, Exponential(1.5))
    direct = unary_tail_power_sum_direct(lambda i: geometric_pmf(0.5, i),
                                         (), 0, 1, 1.5, 0.5)
    assert val == pytest.approx(math.log(direct) / math.log(1.5), rel=1e-12)


def test_dth_penalty_small_order_direct():
    g = Geometric(0.45)
    seq = LengthSeq((1, 2), UnaryTail(2, 3))
    for d in (1.0, 2.0, 4.0):
        direct = math.fsum(
            2.0 ** ((1 + d) * math.log2(point_mass(g, i)) + d * seq.length_at(i))
            for i in range(400))
        want = math.log2(direct) / d
        assert evaluate_penalty(g, seq, DthRedundancy(d)) == \
            pytest.approx(want, rel=1e-11)
    # ratio past 2^(-d/(1+d)) makes the defining sum diverge
    with pytest.raises(DivergenceError):
        evaluate_penalty(Geometric(0.6), seq, DthRedundancy(4.0))


def test_max_redundancy_unary():
    # ratio 1/2: every unary symbol achieves exactly n + log2 p = 0
    assert evaluate_penalty(Geometric(0.5), UNARY, MaxRedundancy()) == \
        pytest.approx(0.0, abs=1e-12)
    # above 1/2 the tail climbs without bound
    assert evaluate_penalty(Geometric(0.6), UNARY, MaxRedundancy()) == math.inf
    # below 1/2 the supremum sits at the tail start
    v = evaluate_penalty(Geometric(0.4), UNARY, MaxRedundancy())
    scan = max(seqlen + math.log2(geometric_pmf(0.4, i))
               for i, seqlen in ((i, i + 1) for i in range(200)))
    assert v == pytest.approx(scan, rel=1e-12)


def test_max_redundancy_worked_example():
    m = with_geometric_tail((0.6, 0.15, 0.15, 0.0375, 0.0375), 0.5)
    assert evaluate_penalty(m, UNARY, MaxRedundancy()) == \
        pytest.approx(math.log2(1.2), rel=1e-12)


def test_entropies():
    g = Geometric(0.5)
    assert shannon_entropy(g) == pytest.approx(2.0, rel=1e-12)
    th = 0.7
    hb = -(th * math.log2(th) + (1 - th) * math.log2(1 - th))
    assert shannon_entropy(Geometric(th)) == pytest.approx(hb / (1 - th), rel=1e-12)
    assert renyi_entropy(g, 2.0) == pytest.approx(2.5431066063272243, rel=1e-12)
    assert renyi_entropy(g, 1.0) == pytest.approx(shannon_entropy(g), rel=1e-12)
    # direct alpha-sum cross-check
    a = 1.3
    alpha = 1.0 / (1.0 + math.log2(a))
    z = math.fsum(geometric_pmf(0.5, i) ** alpha for i in range(300))
    assert renyi_entropy(g, a) == pytest.approx(math.log2(z) / (1 - alpha), rel=1e-11)
    with pytest.raises(ValueError):
        renyi_entropy(g, 0.5)
    fin = ExplicitFinite((0.25, 0.25, 0.25, 0.25))
    assert shannon_entropy(fin) == pytest.approx(2.0)
    assert renyi_entropy(fin, 2.0) == pytest.approx(2.0)
