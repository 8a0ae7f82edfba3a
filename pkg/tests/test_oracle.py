from fractions import Fraction

from optinterval import oracle
from optinterval.core import Eccentricity
from optinterval.minplus import TOP


def test_hci_oracle_examples():
    assert oracle.brute_hci([(2, 1), (-1, 1), (3, 1)], 3).confidence == 3
    assert not oracle.brute_hci([(1, 1), (1, 1)], 5).found
    ans = oracle.brute_hci([(5, 1), (-1, 1), (20, 100)], 20)
    assert ans.confidence == Fraction(24, 102)
    assert (ans.interval.start, ans.interval.end) == (1, 3)
    assert oracle.brute_hci([(4, 1)], 4).confidence == 4
    assert not oracle.brute_hci([], 0).found


def test_hci_oracle_lists_all_optima():
    best, where = oracle.brute_hci_all([(1, 1), (1, 1)], 1)
    assert best == 1 and where == [(1, 1), (1, 2), (2, 2)]


def test_rmp_phi_best_oracles():
    h3 = [(2, 1), (-1, 1), (3, 1)]
    assert oracle.brute_rmp(h3, 3) == [0, 0, 3]
    assert oracle.brute_rmp([(3, 1), (-5, 1), (1, 1)], 3) == [1, -1, -1]
    assert oracle.brute_phi(h3, 1, 3) == 2
    assert oracle.brute_best([(5, 1), (-1, 1), (20, 100)], 0, 3, 3) == 1
    assert oracle.brute_best([(1, 1), (1, 1)], 1, 2, 2) == 2


def test_psei_oracle_examples():
    def plain(h):
        return [(v, 1) for v in h]

    iv = oracle.brute_psei(plain([1, -2, 3]), 2)
    assert (iv.start, iv.end) == (1, 3) and iv.value == Eccentricity(2, 3)
    iv = oracle.brute_psei(plain([3, 1, 4]), 3)
    assert (iv.start, iv.end) == (1, 3)
    iv = oracle.brute_psei(plain([-1, -5, -1, -1]), 2)
    assert (iv.start, iv.end) == (3, 4)
    assert oracle.brute_psei(plain([7]), 1).value == Eccentricity(7, 1)


def test_psei_by_bound_agrees_with_single_bound():
    h = [3, -4, 2, 2, -1, 5, -6]
    keys = oracle.brute_psei_by_bound(h)
    for L in range(1, len(h) + 1):
        iv = oracle.brute_psei([(v, 1) for v in h], L)
        assert keys[L - 1] == oracle.ecc_key(iv.value.hit, iv.length)


def test_convolution_and_sums_oracles():
    assert oracle.brute_convolution([3, 1], [2, 5]) == [5, 3]
    assert oracle.brute_convolution([TOP], [TOP]) == [TOP]
    assert oracle.brute_max_sums([1, -2, 3]) == [3, 1, 2]
    assert oracle.brute_max_sums([5]) == [5]
