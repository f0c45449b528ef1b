from fractions import Fraction

import pytest

from e36verify.standard_model import (LISTED_MULTIPLETS, OUT_OF_REACH_MULTIPLETS, UNLISTED_MULTIPLETS,
                                      degenerate_labels_exponentiate, enumerate_fundamental, exponentiates_to_k,
                                      is_fundamental, multiplet, scan_degenerate_sum)


def test_enumeration():
    found = enumerate_fundamental()
    assert len(found) == 18
    assert set(found) == set(LISTED_MULTIPLETS) | set(UNLISTED_MULTIPLETS)
    assert all(m.conjugate() in found for m in found)


@pytest.mark.parametrize("p, q, r, y, expected", [
    (0, 1, 1, Fraction(1, 3), True),
    (1, 0, 1, Fraction(-1, 3), True),
    (1, 0, 1, Fraction(1, 3), False),
    (0, 0, 0, Fraction(1, 2), False),
    (0, 0, 1, -1, True),
])
def test_exponentiation(p, q, r, y, expected):
    assert exponentiates_to_k(p, q, r, y) is expected


def test_charges():
    assert multiplet(0, 0, 1, -1).charges == [0, -1]
    assert multiplet(0, 1, 1, Fraction(1, 3)).charges == [Fraction(2, 3), Fraction(-1, 3)]
    assert str(multiplet(0, 1, 1, Fraction(1, 3))) == '(01,1,1/3)'


def test_charge_bound():
    assert not is_fundamental(multiplet(0, 0, 0, 4))
    assert not is_fundamental(multiplet(2, 0, 0, Fraction(2, 3)))


def test_degenerate_labels_exponentiate():
    assert all(ok for *_, ok in degenerate_labels_exponentiate(4))


def test_lowest_layer_of_degenerate_sum():
    result = scan_degenerate_sum(0)
    wanted = [multiplet(0, 0, 1, -1), multiplet(1, 0, 0, Fraction(2, 3)), multiplet(0, 0, 0, 2),
              multiplet(0, 0, 0, -2)]
    assert result.missing(wanted) == []
    assert sum(result.counts.values()) == 4


def test_scan_misses_only_the_out_of_reach_multiplet():
    result = scan_degenerate_sum(4)
    assert result.missing(LISTED_MULTIPLETS) == list(OUT_OF_REACH_MULTIPLETS)
    assert all(result.multiplicity(m) == 0 for m in OUT_OF_REACH_MULTIPLETS)
    assert result.truncation == 4
