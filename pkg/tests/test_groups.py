import cmath
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given

from heyde_lab.groups import (
    Endomorphism,
    IncompatibleMatrixError,
    Subgroup,
    annihilator,
    character,
    identity_endomorphism,
    make_endomorphism,
    make_group,
    neg_identity_endomorphism,
    order2_subgroup,
    pairing_is_trivial,
    scaling_endomorphism,
    subgroup_generated,
)

SMALL_ORDERS = [[5], [9], [2, 3], [3, 3], [4], [12]]


def elem(group, *coords):
    return group.element(coords)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "orders,expected",
    [([5], 5), ([3, 3], 9), ([9, 3], 27)],
)
def test_make_group_order(orders, expected):
    group = make_group(orders)
    assert group.order == expected
    assert group.cyclic_orders == tuple(orders)
    assert len(group.elements) == expected


def test_make_group_rejects_small_factor():
    with pytest.raises(ValueError):
        make_group([1, 5])
    with pytest.raises(ValueError):
        make_group([])


def test_make_group_rejects_over_cap():
    with pytest.raises(ValueError):
        make_group([101, 101], enumeration_cap=10_000)


def test_element_order_is_lexicographic():
    group = make_group([2, 3])
    coords = [e.coords for e in group.elements]
    assert coords == sorted(coords)


def test_element_arithmetic_reduces():
    group = make_group([9, 3])
    x = elem(group, 7, 2)
    y = elem(group, 5, 2)
    assert (x + y).coords == (3, 1)
    assert (-x).coords == (2, 1)
    assert (x - y).coords == (2, 0)
    assert (4 * x).coords == (28 % 9, 8 % 3)


def test_cross_group_arithmetic_rejected():
    with pytest.raises(ValueError):
        elem(make_group([5]), 1) + elem(make_group([7]), 1)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


def test_character_examples():
    g5 = make_group([5])
    assert character(elem(g5, 1), elem(g5, 0)) == pytest.approx(1)
    assert character(elem(g5, 1), elem(g5, 1)) == pytest.approx(
        cmath.exp(2j * math.pi / 5)
    )
    g33 = make_group([3, 3])
    # pairing exponent (1*2 + 2*1)/3 = 4/3, i.e. a primitive cube root
    assert character(elem(g33, 1, 2), elem(g33, 2, 1)) == pytest.approx(
        cmath.exp(2j * math.pi / 3)
    )


def test_character_group_mismatch():
    with pytest.raises(ValueError):
        character(elem(make_group([5]), 1), elem(make_group([7]), 1))


def _tables(group):
    n = group.order
    elements = group.elements
    index = group.index
    add = np.array([[index(x + y) for y in elements] for x in elements])
    chars = np.array(
        [[character(x, y) for y in elements] for x in elements]
    )
    return add, chars


@pytest.mark.parametrize("orders", [[5], [9], [2, 3], [3, 3], [27], [5, 5, 5]])
def test_pairing_bilinear_exhaustive(orders):
    """character(x + x', y) == character(x, y) * character(x', y) for every
    triple, on groups up to order 125."""
    group = make_group(orders)
    add, chars = _tables(group)
    lhs = chars[add, :]  # [x, x', y]
    rhs = chars[:, None, :] * chars[None, :, :]
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_pairing_modulus_one():
    group = make_group([9, 3])
    for x in group.elements:
        for y in group.elements:
            assert abs(abs(character(x, y)) - 1) < 1e-12


def test_pairing_is_trivial_matches_numeric():
    group = make_group([12])
    for x in group.elements:
        for y in group.elements:
            assert pairing_is_trivial(x, y) == (
                abs(character(x, y) - 1) < 1e-9
            )


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------


def test_make_endomorphism_examples():
    g5 = make_group([5])
    assert make_endomorphism(g5, [[2]]).is_auto
    g9 = make_group([9])
    tripling = make_endomorphism(g9, [[3]])
    assert not tripling.is_auto
    assert {x.coords[0] for x in tripling.image()} == {0, 3, 6}


def test_incompatible_entry_reported():
    group = make_group([9, 3])
    with pytest.raises(IncompatibleMatrixError) as err:
        make_endomorphism(group, [[1, 1], [0, 1]])
    assert err.value.row == 0 and err.value.col == 1


def test_matrix_entries_reduced():
    g5 = make_group([5])
    assert make_endomorphism(g5, [[7]]).matrix == ((2,),)


@pytest.mark.parametrize("orders", [[5], [9], [2, 3], [3, 3], [9, 3], [4]])
def test_automorphism_three_way_equivalence(orders):
    """is_auto == trivial kernel == full image, each computed separately."""
    group = make_group(orders)
    candidates = [identity_endomorphism(group), neg_identity_endomorphism(group)]
    for n in range(group.cyclic_orders[0]):
        try:
            candidates.append(scaling_endomorphism(group, n))
        except ValueError:
            pass
    for endo in candidates:
        kernel_trivial = all(
            not endo(x).is_zero for x in group.elements if not x.is_zero
        )
        image_full = len({endo(x).coords for x in group.elements}) == group.order
        assert endo.is_auto == kernel_trivial == image_full


def test_adjoint_formula_example():
    group = make_group([9, 3])
    endo = make_endomorphism(group, [[1, 3], [0, 1]])
    # entry (0,1)=3 maps to adjoint entry (1,0) = 3 * 3 / 9 = 1
    assert endo.adjoint().matrix == ((1, 0), (1, 1))


@pytest.mark.parametrize("orders", [[5], [9], [9, 3], [3, 3], [2, 3], [5, 5]])
def test_adjoint_pairing_identity_exhaustive(orders):
    group = make_group(orders)
    rng_entries = [
        identity_endomorphism(group),
        neg_identity_endomorphism(group),
        scaling_endomorphism(group, 2),
    ]
    if group.rank == 2:
        n1, n2 = group.cyclic_orders
        step = n1 // math.gcd(n1, n2)
        rng_entries.append(Endomorphism(group, [[1, step], [0, 1]]))
    for endo in rng_entries:
        adj = endo.adjoint()
        for x in group.elements:
            for y in group.elements:
                assert abs(character(endo(x), y) - character(x, adj(y))) < 1e-9


def test_adjoint_involutive():
    group = make_group([9, 3])
    endo = Endomorphism(group, [[2, 3], [1, 2]])
    assert endo.adjoint().adjoint() == endo
    ident = identity_endomorphism(group)
    assert ident.adjoint() == ident


def test_adjoint_cyclic_self():
    g5 = make_group([5])
    assert scaling_endomorphism(g5, 2).adjoint().matrix == ((2,),)


def test_kernel_examples():
    g9 = make_group([9])
    six = identity_endomorphism(g9) + scaling_endomorphism(g9, 5)
    assert [x.coords[0] for x in six.kernel()] == [0, 3, 6]
    g5 = make_group([5])
    three = identity_endomorphism(g5) + scaling_endomorphism(g5, 2)
    assert three.kernel().is_trivial
    assert identity_endomorphism(g9).kernel().is_trivial


def test_compose_add_invert():
    g5 = make_group([5])
    double = scaling_endomorphism(g5, 2)
    assert double.inverse().matrix == ((3,),)
    assert (identity_endomorphism(g5) + double).matrix == ((3,),)
    g9 = make_group([9])
    quad = scaling_endomorphism(g9, 4)
    assert (quad @ quad.inverse()) == identity_endomorphism(g9)
    assert (quad.inverse() @ quad) == identity_endomorphism(g9)


def test_invert_non_automorphism_rejected():
    g9 = make_group([9])
    with pytest.raises(ValueError):
        scaling_endomorphism(g9, 3).inverse()


def test_invert_matrix_case():
    group = make_group([3, 3])
    endo = Endomorphism(group, [[1, 1], [0, 1]])
    assert endo.is_auto
    inv = endo.inverse()
    assert (endo @ inv) == identity_endomorphism(group)


@given(st.sampled_from(SMALL_ORDERS), st.data())
def test_endomorphism_additive_action(orders, data):
    """(a + b)(x) == a(x) + b(x) and (a @ b)(x) == a(b(x))."""
    group = make_group(orders)
    n = group.cyclic_orders[0]
    a = scaling_endomorphism(group, data.draw(st.integers(0, n - 1)))
    b = scaling_endomorphism(group, data.draw(st.integers(0, n - 1)))
    x = group.elements[data.draw(st.integers(0, group.order - 1))]
    assert (a + b)(x) == a(x) + b(x)
    assert (a @ b)(x) == a(b(x))


# ---------------------------------------------------------------------------
# subgroups and annihilators
# ---------------------------------------------------------------------------


def test_subgroup_generated_examples():
    g9 = make_group([9])
    sub = subgroup_generated(g9, [elem(g9, 3)])
    assert [x.coords[0] for x in sub] == [0, 3, 6]
    assert len(subgroup_generated(g9, [])) == 1


def test_subgroup_closure_validated():
    g9 = make_group([9])
    with pytest.raises(ValueError):
        Subgroup(g9, [elem(g9, 0), elem(g9, 3)])  # 3+3=6 missing


def test_annihilator_examples():
    g9 = make_group([9])
    sub = subgroup_generated(g9, [elem(g9, 3)])
    assert annihilator(sub).elements == sub.elements
    whole = subgroup_generated(g9, [elem(g9, 1)])
    assert annihilator(whole).is_trivial
    trivial = subgroup_generated(g9, [])
    assert len(annihilator(trivial)) == 9


def test_annihilator_is_dual_order():
    """|K| * |A(K)| == |X| on a few groups."""
    for orders in ([12], [3, 3], [2, 3]):
        group = make_group(orders)
        for g in group.elements:
            sub = subgroup_generated(group, [g])
            assert len(sub) * len(annihilator(sub)) == group.order


def test_order2_subgroup_examples():
    assert order2_subgroup(make_group([5])).is_trivial
    g4 = make_group([4])
    assert [x.coords[0] for x in order2_subgroup(g4)] == [0, 2]
    g23 = make_group([2, 3])
    assert [x.coords for x in order2_subgroup(g23)] == [(0, 0), (1, 0)]


@pytest.mark.parametrize("orders", [[3], [5], [9], [3, 3], [15], [7]])
def test_odd_order_doubling_is_automorphism(orders):
    group = make_group(orders)
    assert order2_subgroup(group).is_trivial
    assert scaling_endomorphism(group, 2).is_auto
