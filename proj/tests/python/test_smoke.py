import pytest

import steinberg_kit as sk


def test_rankone_sl2():
    rows = sk.rankone_orbits("sl2", 5)
    assert len(rows) == 6
    assert all(r["ok"] for r in rows)
    row = sk.rankone_orbits("sl2", 5, "SL2-II.i.2")[0]
    assert sorted(row["pattern"]) == [(3, 0), (3, 0)]


def test_hilbert_and_classes():
    # (pi, pi) = (-1, pi) = legendre(-1)
    assert sk.hilbert_symbol(2, 2, 5) == 1
    assert sk.hilbert_symbol(2, 2, 7) == -1
    assert sk.square_class(10, 1, 5) == "e0*pi"
    assert sk.quadclass("0,1;1,0", 5)["type"] == "split"


def test_dimensions():
    assert sk.distinction_dimension(2, "split", "SO", 5) == 4
    assert sk.distinction_dimension(2, "split", "O", 5) == 3
    assert sk.distinction_dimension(6, "non-quasi-split", "O", 3) == 3
    assert [sk.sum_over_classes(n, 5) for n in range(1, 7)] == [(n + 1) ** 2 for n in range(1, 7)]
    assert sk.epsilon_G(2, 1) == -1


def test_poincare():
    assert sk.shell_counts("A2", 4) == [1, 3, 6, 9, 12]
    r = sk.poincare_gl3_so3(3, 80)
    num, den = r["partial"]
    cnum, cden = r["closed_form"]
    assert (cnum, cden) == (8, 13)
    assert abs(num / den - cnum / cden) < 1e-12


def test_graph():
    g = sk.graph("SL2-II.i.1", 5)
    assert g["connected"] and g["bipartite"] and g["harmonic_dim"] == 1
    g = sk.graph("SL2-II.ii", 9)
    assert g["loops"] and g["harmonic_dim"] == 0


def test_errors():
    with pytest.raises(sk.SteinbergError):
        sk.hilbert_symbol(0, 0, 4)
    with pytest.raises(sk.SteinbergError):
        sk.rankone_orbits("sl2", 5, "nope")
