"""Core group machinery against brute-force oracles."""

import numpy as np
import pytest

from acgroups.errors import (
    IndexOutOfRange,
    InvalidTable,
    NotNormal,
    OrderCapExceeded,
)
from acgroups.groups import (
    FiniteGroup,
    all_subgroups,
    derived_series,
    derived_subgroup,
    direct_product,
    is_isomorphic,
    is_normal,
    nilpotency_class,
    quotient,
    subgroup_generated,
    upper_central_series,
    validate_group,
)
from conftest import group
from oracles import (
    slow_center,
    slow_centralizer,
    slow_commutator_closure,
    slow_element_order,
    slow_inverse,
)


def table_of(spec):
    return group(spec).table.tolist()


class TestElementOps:
    def test_identity_law(self):
        g = group("Dih(4)")
        assert all(g.multiply(0, x) == x == g.multiply(x, 0) for x in range(8))

    def test_inverse_cyc5(self):
        assert group("Cyc(5)").inverse(2) == 3

    def test_inverses_match_oracle(self):
        for spec in ("Dih(4)", "Sym(3)", "Dic(3)"):
            g = group(spec)
            for x in range(g.order):
                assert g.inverse(x) == slow_inverse(table_of(spec), x)

    def test_element_order_of_rotation(self):
        g = group("Dih(4)")
        # index 1 is the rotation generator r
        assert g.element_order(1) == 4
        assert slow_element_order(table_of("Dih(4)"), 1) == 4

    def test_element_orders_vector(self):
        for spec in ("Dih(4)", "SL2(3)", "Cyc(12)"):
            g = group(spec)
            table = table_of(spec)
            expected = [slow_element_order(table, x) for x in range(g.order)]
            assert g.element_orders.tolist() == expected

    def test_index_out_of_range(self):
        g = group("Cyc(4)")
        with pytest.raises(IndexOutOfRange):
            g.multiply(0, 4)
        with pytest.raises(IndexOutOfRange):
            g.inverse(-1)


class TestCenterAndCentralizers:
    def test_center_cyc6_is_everything(self):
        assert group("Cyc(6)").center().order == 6

    def test_center_dih4_matches_brute_force(self):
        assert group("Dih(4)").center().order == 2
        assert len(slow_center(table_of("Dih(4)"))) == 2

    def test_center_sym3_trivial(self):
        assert group("Sym(3)").center().elements == (0,)
        assert slow_center(table_of("Sym(3)")) == [0]

    def test_centralizer_of_identity_is_whole_group(self):
        g = group("SL2(3)")
        assert g.centralizer(0).order == g.order

    def test_centralizer_of_rotation_in_dih4(self):
        g = group("Dih(4)")
        cent = g.centralizer(1)
        assert cent.order == 4
        assert cent.is_abelian
        assert sorted(slow_centralizer(table_of("Dih(4)"), 1)) == list(cent.elements)

    def test_sym4_double_transposition_centralizer(self):
        g = group("Sym(4)")
        # a double transposition: an order-2 element fixing nothing
        table = table_of("Sym(4)")
        orders = g.element_orders
        x = next(
            x for x in range(24)
            if orders[x] == 2 and len(slow_centralizer(table, x)) == 8
        )
        cent = g.centralizer(x)
        assert cent.order == 8
        assert not cent.is_abelian  # witnesses that Sym(4) is not AC

    def test_centralizers_match_oracle_everywhere(self):
        for spec in ("Dic(3)", "Heis(3)"):
            g = group(spec)
            table = table_of(spec)
            for x in range(g.order):
                assert list(g.centralizer(x).elements) == sorted(
                    slow_centralizer(table, x)
                )


class TestDerivedAndSeries:
    def test_derived_of_cyclic_is_trivial(self):
        assert derived_subgroup(group("Cyc(9)")).order == 1

    def test_derived_of_dih4_is_center(self):
        g = group("Dih(4)")
        der = derived_subgroup(g)
        assert der.order == 2
        assert der.elements == g.center().elements
        assert der.member_set == slow_commutator_closure(table_of("Dih(4)"))

    def test_derived_of_sym4_is_even_permutations(self):
        der = derived_subgroup(group("Sym(4)"))
        assert der.order == 12
        assert der.member_set == slow_commutator_closure(table_of("Sym(4)"))

    def test_derived_series_of_sym4(self):
        orders = [s.order for s in derived_series(group("Sym(4)"))]
        assert orders == [24, 12, 4, 1]

    def test_upper_central_series_abelian(self):
        series = upper_central_series(group("Cyc(4)"))
        assert [s.order for s in series] == [1, 4]
        assert nilpotency_class(group("Cyc(4)")) == 1

    def test_nilpotency_class_dih4(self):
        series = upper_central_series(group("Dih(4)"))
        assert [s.order for s in series] == [1, 2, 8]
        assert nilpotency_class(group("Dih(4)")) == 2

    def test_sym3_not_nilpotent(self):
        assert nilpotency_class(group("Sym(3)")) is None
        series = upper_central_series(group("Sym(3)"))
        assert [s.order for s in series] == [1]

    def test_dihedral_two_power_class(self):
        assert nilpotency_class(group("Dih(8)")) == 3
        assert nilpotency_class(group("Dih(16)")) == 4

    def test_trivial_group_class_zero(self):
        assert nilpotency_class(group("Cyc(1)")) == 0


class TestQuotient:
    def test_quotient_by_whole_group(self):
        g = group("Dih(4)")
        q = quotient(g, g.subgroup(range(8))).group
        assert q.order == 1

    def test_dih4_mod_center_is_klein(self):
        g = group("Dih(4)")
        q = quotient(g, g.center()).group
        assert q.order == 4
        assert q.is_abelian
        assert all(q.element_order(x) <= 2 for x in range(4))

    def test_sl23_mod_center(self):
        g = group("SL2(3)")
        q = quotient(g, g.center()).group
        assert q.order == 12
        assert q.center().order == 1
        assert is_isomorphic(q, group("Alt(4)"))

    def test_quotient_rejects_non_normal(self):
        g = group("Sym(3)")
        transposition = next(x for x in range(1, 6) if g.element_order(x) == 2)
        sub = subgroup_generated(g, [transposition])
        with pytest.raises(NotNormal):
            quotient(g, sub)

    def test_coset_map_is_homomorphism(self):
        g = group("Dih(6)")
        res = quotient(g, derived_subgroup(g))
        cos = res.coset_of
        q = res.group
        for x in range(g.order):
            for y in range(g.order):
                assert cos[g.table[x, y]] == q.table[cos[x], cos[y]]


class TestDirectProduct:
    def test_product_with_trivial_keeps_table(self):
        g = group("Dih(4)")
        prod = direct_product(g, group("Cyc(1)"))
        assert np.array_equal(prod.table, g.table)

    def test_dih4_times_cyc3(self):
        prod = direct_product(group("Dih(4)"), group("Cyc(3)"))
        assert prod.order == 24
        assert prod.center().order == 6

    def test_heis3_times_cyc2(self):
        prod = direct_product(group("Heis(3)"), group("Cyc(2)"))
        assert prod.order == 54
        assert prod.center().order == 6

    def test_center_multiplicativity(self):
        for a, b in (("Dih(4)", "Sym(3)"), ("Dic(2)", "Cyc(4)")):
            prod = direct_product(group(a), group(b))
            assert (
                prod.center().order
                == group(a).center().order * group(b).center().order
            )

    def test_cap_refusal(self):
        with pytest.raises(OrderCapExceeded):
            direct_product(group("Dih(4)"), group("Cyc(3)"), cap=20)


class TestSubgroups:
    def test_generated_by_nothing_is_trivial(self):
        assert subgroup_generated(group("Sym(4)"), []).elements == (0,)

    def test_three_cycle_generates_normal_subgroup(self):
        g = group("Sym(3)")
        three_cycle = next(x for x in range(1, 6) if g.element_order(x) == 3)
        sub = subgroup_generated(g, [three_cycle])
        assert sub.order == 3
        assert is_normal(g, sub)

    def test_transposition_subgroup_not_normal(self):
        g = group("Sym(3)")
        transposition = next(x for x in range(1, 6) if g.element_order(x) == 2)
        sub = subgroup_generated(g, [transposition])
        assert sub.order == 2
        assert not is_normal(g, sub)

    def test_all_subgroups_of_dih4(self):
        subs = all_subgroups(group("Dih(4)"))
        assert len(subs) == 10
        assert sorted(s.order for s in subs) == [1, 2, 2, 2, 2, 2, 4, 4, 4, 8]

    def test_all_subgroups_of_q8(self):
        subs = all_subgroups(group("Dic(2)"))
        assert sorted(s.order for s in subs) == [1, 2, 4, 4, 4, 8]

    def test_all_subgroups_cap(self):
        with pytest.raises(OrderCapExceeded):
            all_subgroups(group("Dih(4)"), max_order=4)

    def test_subgroup_as_group_reindexes(self):
        g = group("Sym(4)")
        sub = g.centralizer(
            next(
                x for x in range(24)
                if g.element_orders[x] == 2 and g.centralizer(x).order == 8
            )
        )
        as_g = sub.as_group()
        assert as_g.order == 8
        validate_group(as_g, assoc="exhaustive")


class TestIsomorphism:
    def test_self_isomorphic(self):
        g = group("SL2(3)")
        assert is_isomorphic(g, g)

    def test_dih4_not_isomorphic_to_quaternions(self):
        assert not is_isomorphic(group("Dih(4)"), group("Dic(2)"))

    def test_gl23_mod_center_is_sym4(self):
        g = group("GL2(3)")
        q = quotient(g, g.center()).group
        assert is_isomorphic(q, group("Sym(4)"))

    def test_dihedral_versus_cyclic(self):
        assert not is_isomorphic(group("Dih(3)"), group("Cyc(6)"))

    def test_abelian_same_order_multiset(self):
        assert is_isomorphic(group("Cyc(2) x Cyc(3)"), group("Cyc(6)"))
        assert not is_isomorphic(group("Cyc(2) x Cyc(2)"), group("Cyc(4)"))

    def test_cap(self):
        with pytest.raises(OrderCapExceeded):
            is_isomorphic(group("Dih(4)"), group("Dic(2)"), cap=4)


class TestValidation:
    def test_valid_group_passes_all_modes(self):
        g = group("Dih(6)")
        for mode in ("exhaustive", "sampled", "light", "auto"):
            validate_group(g, assoc=mode)

    def test_broken_identity(self):
        t = group("Cyc(3)").table.copy()
        t[0, 1] = 2
        with pytest.raises(InvalidTable, match="identity|Latin"):
            validate_group(FiniteGroup(t))

    def test_broken_latin_square(self):
        t = group("Cyc(4)").table.copy()
        t[1, 1] = 1
        with pytest.raises(InvalidTable):
            validate_group(FiniteGroup(t))

    def test_non_associative_latin_square_caught(self):
        # a quasigroup with identity that is not a group (order 5 loop)
        t = np.array([
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ])
        g = FiniteGroup(t)
        with pytest.raises(InvalidTable):
            validate_group(g, assoc="exhaustive")
        with pytest.raises(InvalidTable):
            validate_group(g, assoc="light")


class TestDivisibilityInvariants:
    SPECS = ("Dih(4)", "Dic(3)", "Sym(4)", "SL2(3)", "Heis(3)", "Dih(6)")

    def test_center_divides_order(self):
        for spec in self.SPECS:
            g = group(spec)
            assert g.order % g.center().order == 0

    def test_centralizers_divide_and_contain_center(self):
        for spec in self.SPECS:
            g = group(spec)
            z = set(g.center().elements)
            for x in range(g.order):
                cent = g.centralizer(x)
                assert g.order % cent.order == 0
                assert z <= cent.member_set

    def test_nilpotency_class_one_iff_abelian(self):
        for spec in self.SPECS + ("Cyc(6)", "Cyc(1)"):
            g = group(spec)
            if g.order == 1:
                continue
            assert (nilpotency_class(g) == 1) == g.is_abelian

    def test_central_quotient_never_nontrivial_cyclic(self):
        for spec in self.SPECS:
            g = group(spec)
            q = quotient(g, g.center()).group
            if q.order > 1:
                # cyclic means some element generates everything
                assert all(
                    subgroup_generated(q, [x]).order < q.order
                    for x in range(q.order)
                )
