"""Generator tests with independent digit/factorization oracles."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from measeq.density import APSet
from measeq.errors import (
    CapacityError,
    DomainError,
    SpecificationError,
    WindowRangeError,
)
from measeq.seqgen import (
    AdditiveFunctionSpec,
    BaseChain,
    SequenceWindow,
    SimpleSpec,
    VdcSequence,
    apply_pointwise,
    gen_additive,
    gen_simple,
    gen_vdc,
    subsequence,
)


def radical_inverse_oracle(n: int, b: int) -> Fraction:
    """Digit-reversal oracle: mirror the base-b digits of n across the point."""
    digs = []
    while n:
        n, d = divmod(n, b)
        digs.append(d)
    val = Fraction(0)
    for j, d in enumerate(digs):
        val += Fraction(d, b ** (j + 1))
    return val


def trial_division_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class TestVdc:
    def test_base2_small(self):
        chain = BaseChain.geometric(2, 12)
        assert gen_vdc(1, chain) == 0.5
        assert gen_vdc(4, chain) == 0.125

    def test_base3_example(self):
        chain = BaseChain.geometric(3, 8)
        assert gen_vdc(5, chain) == pytest.approx(7 / 9, abs=1e-15)

    @given(st.integers(0, 5000), st.integers(2, 7))
    def test_matches_digit_reversal_oracle(self, n, b):
        chain = BaseChain.geometric(b, 1).ensure_capacity(n)
        assert gen_vdc(n, chain) == pytest.approx(
            float(radical_inverse_oracle(n, b)), abs=1e-15
        )

    @given(st.integers(0, 40319))
    def test_digit_round_trip_factorial_chain(self, n):
        chain = BaseChain.factorial(8)
        digs = chain.digits(n)
        assert sum(a * q for a, q in zip(digs, chain.moduli)) == n

    def test_capacity_error(self):
        chain = BaseChain((1, 2, 4))
        with pytest.raises(CapacityError):
            gen_vdc(4, chain)

    def test_injective_on_window(self):
        w = VdcSequence(BaseChain.geometric(2, 12)).window(4096)
        assert np.unique(w.values).size == 4096

    def test_congruence_contracts_values(self):
        # indices congruent mod Q_j differ by at most 1/Q_j, exhaustively
        w = VdcSequence(BaseChain.geometric(2, 13)).window(4096)
        idx = np.arange(1, 4097)
        for qj in (2, 4, 8, 16, 32, 64):
            for r in range(qj):
                vals = w.values[idx % qj == r]
                assert vals.max() - vals.min() <= 1 / qj

    def test_window_matches_pointwise_eval(self):
        handle = VdcSequence(BaseChain.geometric(3, 1))
        w = handle.window(200)
        for n in (1, 7, 50, 200):
            assert w.value(n) == handle.eval(n)

    def test_witness_levels(self):
        handle = VdcSequence(BaseChain.geometric(2, 1))
        assert handle.witness(1 / 8) == 8
        assert handle.witness(0.3) == 4


class TestAdditive:
    def test_empty_sum_at_one(self):
        spec = AdditiveFunctionSpec({2: 0.25, 3: 1 / 9, 5: 0.01, 7: 0.001}, 0.0)
        assert gen_additive(10, spec).value(1) == 0.0

    def test_distinct_primes_add(self):
        spec = AdditiveFunctionSpec(
            {2: 0.25, 3: 1 / 9, 5: 0.01, 7: 0.001, 11: 1e-5, 13: 1e-6}, 0.0
        )
        w = gen_additive(13, spec)
        assert w.value(12) == pytest.approx(13 / 36, abs=1e-15)

    def test_prime_powers_flatten(self):
        spec = AdditiveFunctionSpec({2: 0.25, 3: 1 / 9, 5: 0.01, 7: 0.001}, 0.0)
        w = gen_additive(10, spec)
        assert w.value(8) == 0.25
        assert w.value(4) == w.value(2) == 0.25

    def test_missing_prime_is_an_error(self):
        spec = AdditiveFunctionSpec({2: 0.25}, 0.0)
        with pytest.raises(SpecificationError):
            gen_additive(10, spec)

    def test_sieve_matches_factorization_oracle(self):
        spec = AdditiveFunctionSpec.from_function(lambda p: 4.0**-p, 2000)
        w = gen_additive(2000, spec)
        for n in range(1, 2000 + 1, 37):
            expected = sum(4.0**-p for p in trial_division_factors(n))
            assert w.value(n) == pytest.approx(expected, abs=1e-15)

    def test_congruence_bound_exact_tail(self):
        # classes mod N! keep values within twice the exact tail beyond N
        spec = AdditiveFunctionSpec.from_function(lambda p: 4.0**-p, 10_000)
        w = gen_additive(10_000, spec)
        for N, mod in ((3, 6), (4, 24)):
            tail = 2 * spec.tail_above(N)
            idx = np.arange(1, 10_001)
            for r in range(mod):
                vals = w.values[idx % mod == r]
                assert vals.max() - vals.min() <= tail

    def test_negative_value_rejected(self):
        with pytest.raises(SpecificationError):
            AdditiveFunctionSpec({2: -0.1}, 0.0)

    def test_duplicate_nonzero_values_rejected(self):
        with pytest.raises(SpecificationError):
            AdditiveFunctionSpec({2: 0.5, 3: 0.5}, 0.0)


class TestSimple:
    def spec(self):
        return SimpleSpec(
            [(APSet.single(0, 2), 1.0), (APSet.single(1, 2), 2.0)]
        )

    def test_values(self):
        w = gen_simple(10, self.spec())
        assert w.value(4) == 1.0
        assert w.value(7) == 2.0

    def test_window_mean_matches_density_combination(self):
        w = gen_simple(1000, self.spec())
        assert w.values.mean() == pytest.approx(1.5, abs=1e-12)

    def test_empty_parts_vanish(self):
        w = gen_simple(10, SimpleSpec([]))
        assert not w.values.any()

    def test_overlap_rejected(self):
        with pytest.raises(SpecificationError):
            SimpleSpec([(APSet.single(0, 2), 1.0), (APSet.single(2, 4), 2.0)])

    @given(st.integers(200, 2000))
    @settings(max_examples=20)
    def test_mean_within_inverse_window(self, N):
        spec = SimpleSpec(
            [(APSet.single(1, 3), 0.5), (APSet.single(2, 6), -1.0)]
        )
        w = gen_simple(N, spec)
        exact = 0.5 * Fraction(1, 3) + (-1.0) * Fraction(1, 6)
        slack = (0.5 + 1.0) / N  # one progression per part, off-by-one counts
        assert abs(w.values.mean() - float(exact)) <= slack


class TestWindowOps:
    def test_subsequence_identity(self):
        w = VdcSequence(BaseChain.geometric(2, 1)).window(64)
        same = subsequence(w, np.arange(1, 65))
        assert np.array_equal(same.values, w.values)

    def test_subsequence_pair_swap(self):
        w = VdcSequence(BaseChain.geometric(2, 1)).window(64)
        k = np.arange(1, 65)
        k[0::2], k[1::2] = k[1::2].copy(), k[0::2].copy()
        swapped = subsequence(w, k)
        assert np.array_equal(swapped.values[::2], w.values[1::2])
        assert np.array_equal(swapped.values[1::2], w.values[::2])

    def test_subsequence_even_indices_of_even_indicator(self):
        spec = SimpleSpec([(APSet.single(0, 2), 1.0)])
        w = gen_simple(200, spec)
        sub = subsequence(w, 2 * np.arange(1, 101))
        assert (sub.values == 1.0).all()

    def test_subsequence_out_of_range(self):
        w = gen_simple(10, SimpleSpec([]))
        with pytest.raises(WindowRangeError):
            subsequence(w, [1, 11])

    def test_apply_identity(self):
        w = VdcSequence(BaseChain.geometric(2, 1)).window(32)
        out = apply_pointwise(lambda x: x, w)
        assert np.array_equal(out.values, w.values)

    def test_apply_square_constant(self):
        w = SequenceWindow([0.5] * 4)
        assert (apply_pointwise(lambda x: x * x, w).values == 0.25).all()

    def test_apply_square_mean_near_third(self):
        # quadrature oracle: the limit mean of x^2 under the uniform law is 1/3
        w = VdcSequence(BaseChain.geometric(2, 1)).window(100_000)
        out = apply_pointwise(lambda x: x * x, w)
        assert out.values.mean() == pytest.approx(1 / 3, abs=1e-2)

    def test_apply_domain_error(self):
        w = SequenceWindow([-1.0, 1.0])
        with pytest.raises(DomainError):
            apply_pointwise(np.log, w)

    def test_window_validates_bounds(self):
        with pytest.raises(ValueError):
            SequenceWindow([0.5, 2.0], bounds=(0.0, 1.0))

    def test_values_are_read_only(self):
        w = SequenceWindow([1.0, 2.0])
        with pytest.raises(ValueError):
            w.values[0] = 5.0
