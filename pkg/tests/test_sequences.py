import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kfsteiner.sequences import (
    GAMMA,
    admissible_integers,
    checkpoint_index,
    fib,
    gamma_radical_inverse,
    is_admissible,
    kf_point,
    kf_points,
    kronecker_point,
    parse_sequence_id,
    sequence_values,
    to_direction,
    vdc_point,
    vdc_points,
)

G = GAMMA

# The first twelve sequence values as explicit golden-ratio polynomials.
FIRST_TWELVE = [
    G,
    G**2,
    G**3,
    G**3 + G,
    G**4,
    G**4 + G,
    G**4 + G**2,
    G**5,
    G**5 + G,
    G**5 + G**2,
    G**5 + G**3,
    G**5 + G**3 + G,
]


def test_gamma_identity():
    assert 0.0 < GAMMA < 1.0
    assert abs((1.0 - GAMMA) - GAMMA**2) < 1e-15


def test_fib_base_and_values():
    assert fib(0) == 0
    assert fib(1) == 1
    # direct recurrence oracle
    seq = [0, 1]
    for _ in range(98):
        seq.append(seq[-1] + seq[-2])
    assert fib(7) == 13 == seq[7]
    assert fib(10) == 55 == seq[10]
    for n in (25, 60, 90):
        assert fib(n) == seq[n]


def test_fib_rejects_negative():
    with pytest.raises(ValueError):
        fib(-1)


def test_is_admissible_examples():
    assert is_admissible(5)  # 101
    assert not is_admissible(3)  # 11
    assert is_admissible(21)  # 10101
    with pytest.raises(ValueError):
        is_admissible(0)


@given(st.integers(min_value=1, max_value=1 << 48))
def test_is_admissible_matches_string_oracle(n):
    assert is_admissible(n) == ("11" not in bin(n))


def test_admissible_count_per_bit_window_is_fibonacci():
    # integers with exactly m binary digits, i.e. in [2**(m-1), 2**m - 1]
    vals = admissible_integers(fib(22))
    for m in range(1, 21):
        lo, hi = 1 << (m - 1), (1 << m) - 1
        count = int(np.count_nonzero((vals >= lo) & (vals <= hi)))
        # standard indexing F_1 = F_2 = 1 matches the window counts
        assert count == fib(m), f"window m={m}"


def test_gamma_radical_inverse_golden_values():
    assert abs(gamma_radical_inverse(1) - G) < 1e-15
    assert abs(gamma_radical_inverse(5) - (G**3 + G)) < 1e-15
    for n in range(1, 12):
        assert abs(gamma_radical_inverse(1 << (n - 1)) - G**n) < 1e-14
    assert abs(gamma_radical_inverse(32) - G**6) < 1e-15
    assert abs(gamma_radical_inverse(32) - 0.0557280900008412) < 1e-12


def test_gamma_radical_inverse_rejects_non_admissible():
    with pytest.raises(ValueError):
        gamma_radical_inverse(3)
    with pytest.raises(ValueError):
        gamma_radical_inverse(6)


def test_radical_inverse_values_distinct_and_in_unit_interval():
    vals = kf_points(10_000)
    assert vals.min() > 0.0 and vals.max() < 1.0
    assert np.diff(np.sort(vals)).min() > 1e-12


def test_first_twelve_points():
    pts = kf_points(12)
    assert np.abs(pts - np.array(FIRST_TWELVE)).max() < 1e-12
    assert abs(kf_point(5) - G**4) < 1e-15


def test_thirteenth_admissible_integer_is_32():
    # enumeration: 1, 2, 4, 5, 8, 9, 10, 16, 17, 18, 20, 21, 32, ...
    vals = admissible_integers(14)
    assert vals.tolist() == [1, 2, 4, 5, 8, 9, 10, 16, 17, 18, 20, 21, 32, 33]
    assert abs(kf_point(13) - G**6) < 1e-15


def test_vdc_examples():
    assert vdc_point(1, 2) == 0.5
    assert vdc_point(3, 2) == 0.75
    assert vdc_point(4, 2) == 0.125
    assert vdc_point(1, 3) == pytest.approx(1.0 / 3.0)
    assert np.allclose(vdc_points(4, 2), [0.5, 0.25, 0.75, 0.125])

    def oracle(n, b):
        digits = []
        while n:
            digits.append(n % b)
            n //= b
        return sum(d * b ** -(i + 1) for i, d in enumerate(digits))

    for n in range(1, 200):
        for b in (2, 3, 5):
            assert vdc_point(n, b) == pytest.approx(oracle(n, b), abs=1e-15)


def test_kronecker_examples():
    assert abs(kronecker_point(1, G) - G) < 1e-15
    assert abs(kronecker_point(2, G) - (2 * G - 1.0)) < 1e-15
    assert kronecker_point(3, 0.5) == 0.5


def test_to_direction():
    d0 = to_direction(0.0)
    assert d0.theta == 0.0 and d0.vector == (1.0, 0.0)
    dh = to_direction(0.5)
    assert dh.theta == pytest.approx(math.pi / 2)
    assert abs(dh.vector[0]) < 1e-12 and dh.vector[1] == pytest.approx(1.0)
    dg = to_direction(G)
    assert dg.theta == pytest.approx(math.pi * G)
    assert math.hypot(*dg.vector) == pytest.approx(1.0, abs=1e-12)
    for bad in (-0.1, 1.2, float("nan")):
        with pytest.raises(ValueError):
            to_direction(bad)


def test_checkpoint_index_examples_and_closed_form():
    assert checkpoint_index(1) == 1
    assert checkpoint_index(4) == 5
    assert checkpoint_index(5) == 8
    # enumeration agrees with fib(k+1); recorded as a derived identity
    for k in range(1, 21):
        assert checkpoint_index(k) == fib(k + 1)


def test_checkpoint_values():
    for k in range(1, 16):
        assert abs(kf_point(checkpoint_index(k)) - G**k) < 1e-12
    # the successor identity needs 2**(k-1) + 1 to be admissible, which
    # holds from k = 3 on; for k = 2 the integer 3 is 11 in binary and
    # G**2 + G equals 1, so the next point after G**2 is G**3 instead
    for k in range(3, 16):
        assert abs(kf_point(checkpoint_index(k) + 1) - (G**k + G)) < 1e-12
    assert abs((G**2 + G) - 1.0) < 1e-15
    assert abs(kf_point(checkpoint_index(2) + 1) - G**3) < 1e-15


def test_parse_sequence_ids():
    assert parse_sequence_id("kf").kind == "kf"
    assert parse_sequence_id("vdc2").base == 2
    assert parse_sequence_id("vdc:3").base == 3
    assert parse_sequence_id("kronecker").alpha == pytest.approx(G)
    assert parse_sequence_id("kronecker:0.25").alpha == 0.25
    assert parse_sequence_id("kronecker:gamma").alpha == pytest.approx(G)
    assert parse_sequence_id("constant:0.4").value == 0.4
    spec = parse_sequence_id("geomdecay:0.8:0.7")
    assert (spec.start, spec.ratio) == (0.8, 0.7)
    with pytest.raises(ValueError):
        parse_sequence_id("nonsense")


def test_sequence_values_deterministic():
    a = sequence_values("random:42", 100)
    b = sequence_values("random:42", 100)
    assert np.array_equal(a, b)
    c = sequence_values("geomdecay:0.9:0.5", 4)
    assert np.allclose(c, [0.9, 0.45, 0.225, 0.1125])
