import pytest
from hypothesis import given, settings, strategies as st

from rootchev import rootdata as rd
from rootchev.linalg import smith_normal_form

CLASSICAL_COUNTS = {
    "A1": 2, "A2": 6, "A3": 12, "A4": 20, "B2": 8, "B3": 18, "B4": 32,
    "C3": 18, "C4": 32, "D4": 24, "D5": 40, "E6": 72, "E7": 126, "E8": 240,
    "F4": 48, "G2": 12,
}


@pytest.mark.parametrize("name,count", sorted(CLASSICAL_COUNTS.items()))
def test_root_counts(name, count):
    datum = rd.build_root_datum(name)
    assert len(datum.roots) == count
    # every root is all-nonnegative or all-nonpositive
    for r in datum.roots:
        assert all(x >= 0 for x in r) or all(x <= 0 for x in r)


def test_a2_table():
    datum = rd.build_root_datum("A2")
    assert datum.cartan == ((2, -1), (-1, 2))
    assert set(datum.pos_roots) == {(1, 0), (0, 1), (1, 1)}


def test_symmetrizability_and_heights():
    for name in rd.SUPPORTED_TYPES:
        datum = rd.build_root_datum(name)
        dc = datum.sym_matrix()
        assert all(dc[i][j] == dc[j][i] for i in range(datum.m) for j in range(datum.m))
        k = rd.height_histogram(datum)
        assert all(k[i] >= k[i + 1] for i in range(len(k) - 1))
        xs = rd.exponents(datum)
        r = datum.num_positive
        assert sum(xs) == r
        assert sum(x + 1 for x in xs) == r + datum.m


def test_paper_height_tables():
    assert rd.height_histogram(rd.build_root_datum("E6")) == (6, 5, 5, 5, 4, 3, 3, 2, 1, 1, 1)
    assert rd.height_histogram(rd.build_root_datum("F4")) == (4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1)
    assert rd.height_histogram(rd.build_root_datum("A2")) == (2, 1)


def test_exponents():
    assert rd.exponents(rd.build_root_datum("A2")) == (1, 2)
    assert rd.exponents(rd.build_root_datum("B2")) == (1, 3)
    assert rd.exponents(rd.build_root_datum("A1")) == (1,)
    assert rd.exponents(rd.build_root_datum("E8")) == (1, 7, 11, 13, 17, 19, 23, 29)


def test_orientation_parsing():
    datum = rd.build_root_datum("A3", ["2>1", "2>3"])
    assert datum.orientation == ((1, 0), (1, 2))
    with pytest.raises(rd.RootDataError):
        rd.build_root_datum("A3", ["1>2"])          # incomplete
    with pytest.raises(rd.RootDataError):
        rd.build_root_datum("A3", ["1>4", "2>3"])   # not an edge
    with pytest.raises(rd.RootDataError):
        rd.build_root_datum("XX")


def test_smith_normal_form():
    assert smith_normal_form([[2, -1], [-1, 2]]) == [1, 3]
    assert smith_normal_form([[2]]) == [2]
    assert smith_normal_form([[2, 4], [4, 8]]) == [2, 0]
    assert smith_normal_form([[6, 0], [0, 10]]) == [2, 30]


def test_cartan_divisor():
    a2 = rd.build_root_datum("A2")
    assert rd.cartan_divisor(a2, 2) == 1
    assert rd.cartan_divisor(a2, 4) == 3
    assert rd.cartan_divisor(rd.build_root_datum("A1"), 3) == 2
    assert rd.cartan_divisor(rd.build_root_datum("D4"), 3) == 4
    assert rd.cartan_divisor(rd.build_root_datum("E6"), 4) == 3


def test_predicted_orders():
    expect = {("A2", 2): 168, ("B2", 2): 720, ("A1", 3): 12, ("A2", 3): 5616,
              ("A3", 2): 20160, ("G2", 2): 12096, ("B2", 3): 25920, ("A1", 2): 6}
    for (name, q), order in expect.items():
        assert rd.predicted_order(rd.build_root_datum(name), q) == order


@given(st.sampled_from(rd.SUPPORTED_TYPES), st.integers(2, 16))
@settings(max_examples=60, deadline=None)
def test_predicted_order_integral(name, q):
    # the formula divides exactly for every supported type and q in 2..16
    assert rd.predicted_order(rd.build_root_datum(name), q) > 0


# -- folding -----------------------------------------------------------------


def test_fold_a3_to_b2():
    # the spec's example: A3 with the end swap gives the B2/C2 Cartan matrix
    quiver = rd.ade_quiver("A3", ["1>2", "3>2"], automorphism={0: 2, 2: 0, 1: 1})
    folded = rd.fold(quiver)
    assert folded.type_name == "B2"
    assert sorted(folded.d) == [1, 2]
    assert len(folded.roots) == 8


def test_fold_d4_to_g2():
    quiver = rd.ade_quiver("D4", ["1>2", "3>2", "4>2"],
                           automorphism={0: 2, 2: 3, 3: 0, 1: 1})
    folded = rd.fold(quiver)
    assert folded.type_name == "G2"
    assert sorted(folded.d) == [1, 3]
    assert len(folded.roots) == 12


def test_fold_identity():
    quiver = rd.ade_quiver("A2")
    folded = rd.fold(quiver)
    assert folded.type_name == "A2"
    assert folded.cartan == rd.build_root_datum("A2").cartan


@pytest.mark.parametrize("ade,orient,auto,target", [
    # sigma-stable orientations; orbit sizes become the symmetrizers d_i
    ("A3", ["1>2", "3>2"], {0: 2, 2: 0, 1: 1}, "B2"),
    ("A5", ["1>2", "2>3", "5>4", "4>3"], {0: 4, 4: 0, 1: 3, 3: 1, 2: 2}, "B3"),
    ("D4", ["1>2", "3>2", "4>2"], {0: 2, 2: 3, 3: 0, 1: 1}, "G2"),
    ("D4", "default", {2: 3, 3: 2}, "C3"),
    ("D5", "default", {3: 4, 4: 3}, "C4"),
    ("E6", ["1>3", "3>4", "5>4", "6>5", "2>4"],
     {0: 5, 5: 0, 2: 4, 4: 2}, "F4"),
])
def test_fold_agrees_with_tables(ade, orient, auto, target):
    folded = rd.fold(rd.ade_quiver(ade, orient, automorphism=auto))
    direct = rd.build_root_datum(target)
    assert folded.type_name == target
    assert folded.cartan == direct.cartan and folded.d == direct.d
    assert set(folded.roots) == set(direct.roots)


def test_fold_rejects_non_admissible():
    # A2 with the arrow swap: the arrow joins the two swapped vertices
    quiver = rd.Quiver((0, 1), ((0, 1),), {0: 1, 1: 0})
    with pytest.raises(rd.RootDataError):
        rd.fold(quiver)
