import torsiongrowth as tg


def test_rational_torsion():
    assert tg.torsion_over_q([0, -1, 1, -10, -20]) == (1, 5)
    assert tg.torsion_over_q([0, 0, 0, 0, 1]) == (1, 6)
    assert tg.torsion_over_q([1, 1, 1, -10, -10]) == (2, 4)
    assert tg.torsion_over_q([1, 1, 1, 35, -28]) == (1, 8)


def test_conductor_and_minimal_model():
    assert tg.conductor([0, -1, 1, -10, -20]) == 11
    assert tg.conductor([1, -1, 1, -5, 5]) == 162
    # non-minimal model scales down
    assert tg.minimal_model([0, 0, 0, 0, 2**6]) == [0, 0, 0, 0, 1]


def test_quadratic_growth():
    r = tg.torsion_growth([0, 0, 0, 0, 1], 2)
    assert len(r) == 1
    assert r[0]["deg"] == 2
    assert r[0]["torsion"] == (2, 6)
    assert r[0]["minpoly"][-1] == 1


def test_cubic_21_torsion():
    r = tg.torsion_growth([1, -1, 1, -5, 5], 3)
    assert [e["torsion"] for e in r] == [(1, 6), (1, 21)]
    assert all(e["deg"] == 3 for e in r)
    assert r[1]["primes"] == [7]


def test_oracle_agrees():
    a = tg.torsion_growth([0, 0, 0, 0, 1], 2)
    b = tg.naive_oracle([0, 0, 0, 0, 1], 2)
    assert [(e["deg"], e["torsion"]) for e in a] == [(e["deg"], e["torsion"]) for e in b]


def test_factor_q():
    # x^2 - 1 = (x - 1)(x + 1)
    assert tg.factor_q([-1, 0, 1]) == [([-1, 1], 1), ([1, 1], 1)]
    # x^4 + 1 irreducible
    assert tg.factor_q([1, 0, 0, 0, 1]) == [([1, 0, 0, 0, 1], 1)]
