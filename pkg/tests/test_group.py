import cmath
import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdnet.group import (Digit, ModulusError, MultiIndex, add_mod, basis_digits, chi,
                         chi_tuple, enumerate_group, index_of)


@pytest.mark.parametrize("a, b, d, expected", [(1, 1, 2, 0), (2, 2, 3, 1), (0, 4, 7, 4)])
def test_add_mod(a, b, d, expected):
    assert add_mod(Digit(a, d), Digit(b, d)) == Digit(expected, d)


def test_add_mod_rejects_mixed_moduli():
    with pytest.raises(ModulusError):
        add_mod(Digit(1, 2), Digit(1, 3))


def test_digit_range():
    with pytest.raises(ValueError):
        Digit(3, 3)
    with pytest.raises(ValueError):
        Digit(0, 1)


def test_chi_values():
    assert chi(Digit(1, 2), Digit(1, 2)) == pytest.approx(-1)
    for d in (2, 3, 5):
        for h in range(d):
            assert chi(Digit(0, d), Digit(h, d)) == pytest.approx(1)
    assert chi(Digit(1, 3), Digit(2, 3)) == pytest.approx(cmath.exp(4j * cmath.pi / 3))


def test_chi_rejects_mixed_moduli():
    with pytest.raises(ModulusError):
        chi(Digit(1, 2), Digit(1, 3))


def test_chi_tuple():
    zero = MultiIndex.zero((0, 1), 3)
    other = MultiIndex((0, 1), (2, 1), 3)
    assert chi_tuple(zero, other) == pytest.approx(1)
    assert chi_tuple(MultiIndex((0, 1), (1, 1), 2), MultiIndex((0, 1), (1, 0), 2)) == pytest.approx(-1)
    # two factors of exp(2 pi i / 3)
    h = MultiIndex((0, 1), (1, 1), 3)
    assert chi_tuple(h, h) == pytest.approx(cmath.exp(4j * cmath.pi / 3))


def test_chi_tuple_key_mismatch():
    with pytest.raises(KeyError):
        chi_tuple(MultiIndex((0, 1), (1, 1), 2), MultiIndex((0, 2), (1, 1), 2))


def test_enumerate_group_ordering():
    assert [m.digits for m in enumerate_group([0], 2)] == [(0,), (1,)]
    assert [m.digits for m in enumerate_group([0, 1], 2)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    nine = enumerate_group([0, 1], 3)
    assert len(nine) == 9 and nine[0].digits == (0, 0) and nine[-1].digits == (2, 2)
    assert [m.digits for m in enumerate_group([], 3)] == [()]


@pytest.mark.parametrize("n, d", [(1, 2), (3, 2), (2, 5), (3, 3)])
def test_enumeration_matches_basis_table(n, d):
    group = enumerate_group(range(n), d)
    assert len({m.digits for m in group}) == d ** n
    table = basis_digits(n, d)
    assert [tuple(r) for r in table] == [m.digits for m in group]
    assert [index_of(m.digits, d) for m in group] == list(range(d ** n))


def test_bicharacter_laws_exhaustive():
    for d in range(2, 8):
        for g, g2, h in itertools.product(range(d), repeat=3):
            lhs = chi(Digit((g + g2) % d, d), Digit(h, d))
            assert abs(lhs - chi(Digit(g, d), Digit(h, d)) * chi(Digit(g2, d), Digit(h, d))) < 1e-12
        for g, h in itertools.product(range(d), repeat=2):
            a, b = Digit(g, d), Digit(h, d)
            assert abs(chi(a, b) - chi(b, a)) < 1e-12
            assert abs(chi(a, b) ** d - 1) < 1e-12


@given(st.integers(2, 9).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(0, d - 1), min_size=3, max_size=3),
                        st.lists(st.integers(0, d - 1), min_size=3, max_size=3))))
def test_chi_tuple_is_product(args):
    d, a, b = args
    expected = np.prod([chi(Digit(x, d), Digit(y, d)) for x, y in zip(a, b)])
    got = chi_tuple(MultiIndex((0, 1, 2), a, d), MultiIndex((0, 1, 2), b, d))
    assert abs(got - expected) < 1e-12
