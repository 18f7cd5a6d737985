import itertools

import numpy as np
import pytest

from cosetlab.exceptions import GroupSpecError, OrderCapExceeded
from cosetlab.groups import (
    build_group,
    canonicalize_table,
    group_from_table,
    permutation_index,
    read_cayley_table,
    validate_cayley_table,
    write_cayley_table,
)

from conftest import SMALL_GROUPS, inv, mul


@pytest.mark.parametrize("desc,order", [
    ("cyclic:12", 12), ("vector:3,2", 9), ("vector:2,4", 16), ("dihedral:5", 10),
    ("symmetric:4", 24), ("product:cyclic:2+cyclic:3", 6), ("product:vector:2,2+symmetric:3", 24),
])
def test_orders(desc, order):
    G = build_group(desc)
    assert G.order == order
    assert validate_cayley_table(G.table)


@pytest.mark.parametrize("desc", SMALL_GROUPS)
def test_axioms_by_hand(desc):
    G = build_group(desc)
    n = G.order
    for a, b, c in itertools.product(range(n), repeat=3):
        assert mul(G, mul(G, a, b), c) == mul(G, a, mul(G, b, c))
    for a in range(n):
        assert mul(G, 0, a) == a == mul(G, a, 0)
        assert mul(G, a, inv(G, a)) == 0
        assert G.inv(a) == inv(G, a)


def test_structured_indexing():
    V = build_group("vector:3,2")
    # (1,0) + (2,1) = (0,1) -> index 3
    assert V.mul(1, 2 + 3 * 1) == 3
    D = build_group("dihedral:4")
    r, s = 1, 4
    assert D.mul(s, r) == D.mul(D.inv(r), s)  # s r = r^-1 s
    assert D.element_order(r) == 4 and D.element_order(s) == 2
    S = build_group("symmetric:3")
    assert S.labels[0] == (0, 1, 2)
    a, b = permutation_index(S, (1, 0, 2)), permutation_index(S, (0, 2, 1))
    # (a*b)(i) = a(b(i))
    assert S.labels[S.mul(a, b)] == tuple(S.labels[a][S.labels[b][i]] for i in range(3))


def test_abelian_and_exponent():
    assert build_group("cyclic:12").is_abelian
    assert not build_group("symmetric:3").is_abelian
    assert build_group("vector:2,4").exponent == 2
    assert build_group("product:cyclic:4+cyclic:6").exponent == 12
    assert build_group("symmetric:4").exponent == 12


@pytest.mark.parametrize("bad", ["cyclic", "cyclic:0", "vector:4,2", "vector:2", "torus:3", "product:cyclic:2",
                                 "cyclic:x"])
def test_bad_descriptors(bad):
    with pytest.raises(GroupSpecError):
        build_group(bad)


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        build_group("symmetric:8")
    with pytest.raises(OrderCapExceeded):
        build_group("cyclic:100", max_order=50)


def test_validate_reports_axiom():
    t = build_group("cyclic:4").table.astype(int).copy()
    t[1, 1] = 7
    assert validate_cayley_table(t).axiom == "closure"
    assert validate_cayley_table(np.zeros((2, 3))).axiom == "shape"
    # a Latin square with identity 0 that is not associative
    loop = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    res = validate_cayley_table(loop)
    assert not res and res.axiom == "associativity"
    a, b, c = res.witness
    assert loop[loop[a, b], c] != loop[a, loop[b, c]]
    no_inv = np.array([[0, 1], [1, 1]])
    assert validate_cayley_table(no_inv).axiom == "inverse"


def test_table_roundtrip_and_relabel(tmp_path):
    G = build_group("symmetric:3")
    path = tmp_path / "s3.txt"
    write_cayley_table(G, path)
    assert np.array_equal(read_cayley_table(path), G.table)
    assert build_group(f"table:{path}") == G

    # move the identity away from index 0, canonicalization moves it back
    perm = [2, 0, 1, 3, 4, 5]
    t = G.table.astype(int)
    relabeled = np.empty_like(t)
    for a in range(6):
        for b in range(6):
            relabeled[perm[a], perm[b]] = perm[t[a, b]]
    canon = canonicalize_table(relabeled)
    assert canon[0].tolist() == list(range(6))
    H = group_from_table(relabeled)
    assert H.order == 6 and not H.is_abelian


def test_equality_by_table():
    assert build_group("cyclic:6") == build_group("cyclic:6")
    assert build_group("cyclic:6") != build_group("symmetric:3")
