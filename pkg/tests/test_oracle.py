"""The frozen ES dimensions agree with the independent dense recomputation."""

from oracle import es_carrier_dim

C2 = [[0, 1], [1, 0]]
V4 = [[i ^ j for j in range(4)] for i in range(4)]
KZ2 = [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]]


def test_es_dim_kZ2_kZ2():
    action = [[{0: 1}, {1: 1}], [{0: 1}, {1: -1}]]
    sigma = [[{0: 1}, {0: 1}], [{0: 1}, {0: -1}]]
    assert es_carrier_dim(C2, KZ2, action, sigma) == 8


def test_es_dim_kZ2_kV4():
    # a and ab act by sign (indices 2, 3 of a-major labels 1 b a ab)
    action = [[{0: 1}, {1: -1 if g in (2, 3) else 1}] for g in range(4)]
    sigma = [[{0: 1}] * 4 for _ in range(4)]
    assert es_carrier_dim(V4, KZ2, action, sigma) == 16
