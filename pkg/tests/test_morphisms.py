from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactalg.boolean import BoolHom, FiniteBooleanAlgebra, hom_from_atom_map, left_adjoint
from contactalg.contact import LocalContactStructure, adjacency_algebra, overlap_algebra
from contactalg.errors import InputError, PreconditionError
from contactalg.fixtures import complete3, path3, pseudo_l
from contactalg.morphisms import DUAL_FLAGS, E_FLAGS, classify_dual_morphism, classify_e_morphism, d_l, d_p

import oracles as O


def graphs(n):
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield [e for i, e in enumerate(pairs) if code >> i & 1]


def local_structures(max_atoms=2):
    """Graph algebras on up to max_atoms vertices with every ideal."""
    for n in range(max_atoms + 1):
        for edges in graphs(n):
            base = adjacency_algebra(n, edges)
            for g in base.algebra.elements():
                yield LocalContactStructure(base, g)


# -- dual morphisms -----------------------------------------------------------


def test_identity_profiles():
    for s in (overlap_algebra(3), path3(), complete3(), pseudo_l()):
        lca = s if isinstance(s, LocalContactStructure) else LocalContactStructure.compact(s)
        rep = classify_dual_morphism(BoolHom.identity(lca.algebra), lca, lca)
        assert rep.all(*DUAL_FLAGS)


def test_f1_violation_example():
    O2, K3 = overlap_algebra(2), complete3()
    phi = hom_from_atom_map(O2.algebra, K3.algebra, [0, 1, 1])
    rep = classify_dual_morphism(phi, O2, K3)
    assert rep["L1"] is False and rep.witnesses["L1"] == ("10", "01")
    assert rep["F1"] is False and rep.witnesses["F1"] == ("10", "01")
    assert rep["EL1"] is False and rep.witnesses["EL1"] == ("100", "010")
    assert rep.all("boolean_hom", "L2", "L3", "LO", "LO_prime", "CO")


def test_table_input_and_non_hom():
    O2 = overlap_algebra(2)
    assert classify_dual_morphism((0, 1, 2, 3), O2, O2).all(*DUAL_FLAGS)
    rep = classify_dual_morphism((0, 0, 0, 0), O2, O2)
    assert rep["boolean_hom"] is False


def test_dual_classifier_input_errors():
    O2 = overlap_algebra(2)
    with pytest.raises(InputError):
        classify_dual_morphism((0, 1), O2, O2)
    with pytest.raises(InputError):
        classify_dual_morphism(BoolHom.identity(FiniteBooleanAlgebra(3)), O2, O2)


def test_l2_and_l3_on_local_structures():
    base = overlap_algebra(2)
    small, whole = LocalContactStructure(base, 0b01), LocalContactStructure.compact(base)
    ident = BoolHom.identity(base.algebra)
    rep = classify_dual_morphism(ident, small, whole)
    # φ_Λ(q) = q is unbounded in the source
    assert rep["L2"] is False and rep.witnesses["L2"] == "01"
    assert rep["L3"] is True
    rep = classify_dual_morphism(ident, whole, small)
    assert rep["L2"] is True and rep["L3"] is False


def l1_oracle(n, m, edges_a, edges_b, g):
    CA, CB = O.graph_contact(edges_a), O.graph_contact(edges_b)
    phi = O.hom_table(n, m, g)
    E = O.elements(n)
    return all(CA(a, b) for a in E for b in E if CB(phi[a], phi[b]))


def co_oracle(n, m, edges_a, edges_b, g):
    CA, CB = O.graph_contact(edges_a), O.graph_contact(edges_b)
    phi = O.hom_table(n, m, g)
    lam = O.meet_adjoint(n, m, phi)
    return all(CB(phi[a], b) for a in O.elements(n) for b in O.elements(m) if CA(a, lam[b]))


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_l1_and_co_match_oracle(n, m):
    for ea in graphs(n):
        for eb in graphs(m):
            src, dst = adjacency_algebra(n, ea), adjacency_algebra(m, eb)
            for g in product(range(n), repeat=m):
                rep = classify_dual_morphism(BoolHom(src.algebra, dst.algebra, g), src, dst)
                assert rep["L1"] == rep["F1"] == l1_oracle(n, m, ea, eb, g)
                assert rep["CO"] == rep["LO_prime"] == co_oracle(n, m, ea, eb, g)


@st.composite
def lca_homs(draw):
    structures = list(local_structures())
    src = draw(st.sampled_from(structures))
    dst = draw(st.sampled_from(structures))
    A = src.algebra
    if A.atom_count == 0 and dst.algebra.atom_count:
        src = LocalContactStructure.compact(overlap_algebra(1))
        A = src.algebra
    k = dst.algebra.atom_count
    g = draw(st.lists(st.integers(0, max(A.atom_count - 1, 0)), min_size=k, max_size=k))
    return BoolHom(A, dst.algebra, tuple(g)), src, dst


@settings(max_examples=300, deadline=None)
@given(lca_homs())
def test_l1_iff_el1_on_symmetric_additive_structures(case):
    phi, src, dst = case
    rep = classify_dual_morphism(phi, src, dst)
    assert rep["L1<=>EL1"]


@settings(max_examples=300, deadline=None)
@given(lca_homs())
def test_dual_and_e_conditions_correspond_through_the_adjoint(case):
    phi, src, dst = case
    dual = classify_dual_morphism(phi, src, dst)
    lam = left_adjoint(phi)
    e = classify_e_morphism(lam, dst, src)
    assert e.all("EF1", "EF2", "EF3")
    assert e["EL6"] == dual["L3"]
    assert e["EL5"] == dual["L2"]
    assert e["EL4"] == dual["EL1"]
    assert e["EL7"] == dual["LO"]
    assert e["EC7"] == dual["CO"]
    assert e["EF4"] == el1_on_extensions(phi, src, dst)


def el1_on_extensions(phi, src, dst):
    lam = left_adjoint(phi)
    B = dst.algebra
    C, C2 = src.extension, dst.extension
    return all(C.contacts(lam[a], lam[b]) for a in B.elements() for b in B.elements() if C2.contacts(a, b))


# -- E-morphisms ----------------------------------------------------------------


def test_identity_e_profile():
    O2 = overlap_algebra(2)
    rep = classify_e_morphism((0, 1, 2, 3), O2, O2)
    assert rep.all(*E_FLAGS)
    assert rep.info["right_adjoint"] == ["00", "10", "01", "11"]


def test_ef1_violation():
    O2 = overlap_algebra(2)
    rep = classify_e_morphism((0, 1, 0, 1), O2, O2)
    assert rep["EF1"] is False and rep.witnesses["EF1"] == "01"


def test_ef2_failure_leaves_adjoint_flags_unset():
    O2 = overlap_algebra(2)
    rep = classify_e_morphism((0, 1, 2, 1), O2, O2)
    assert rep["EF2"] is False and rep.witnesses["EF2"] == ("10", "01")
    assert rep["EL6"] is None and rep["EL7"] is None and rep["EC7"] is None
    assert rep.notes


def test_ef3_violation():
    # ψ(1) = 1 but no c ≤ 1 has ψ(c) = q
    O2 = overlap_algebra(2)
    rep = classify_e_morphism((0, 3, 3, 3), O2, O2)
    assert rep["EF2"] and rep["EF3"] is False


def test_e_classifier_input_errors():
    O2 = overlap_algebra(2)
    with pytest.raises(InputError):
        classify_e_morphism((0, 1, 2), O2, O2)
    with pytest.raises(InputError):
        classify_e_morphism((0, 1, 2, 9), O2, O2)


# -- D_l and D_p -------------------------------------------------------------------


def test_d_l_and_d_p_are_mutually_inverse():
    for n, m in product(range(4), repeat=2):
        src, dst = overlap_algebra(n), overlap_algebra(m)
        for g in product(range(n), repeat=m):
            phi = BoolHom(src.algebra, dst.algebra, g)
            lam = d_l(phi, src, dst)
            assert classify_e_morphism(lam, dst, src).all(*E_FLAGS)
            assert d_p(lam, dst, src) == phi


def test_d_p_then_d_l_recovers_e_morphisms():
    O2 = overlap_algebra(2)
    for psi in product(range(4), repeat=2):
        table = (0, psi[0], psi[1], psi[0] | psi[1])
        prof = classify_e_morphism(table, O2, O2)
        if prof.all("EF1", "EF2", "EF3", "EL4", "EL5"):
            phi = d_p(table, O2, O2)
            assert d_l(phi, O2, O2) == table


def test_d_l_precondition_flag():
    O2, K3 = overlap_algebra(2), complete3()
    phi = hom_from_atom_map(O2.algebra, K3.algebra, [0, 1, 1])
    with pytest.raises(PreconditionError) as exc:
        d_l(phi, O2, K3)
    assert exc.value.flag == "L1"


def test_d_p_precondition_flags():
    O2 = overlap_algebra(2)
    with pytest.raises(PreconditionError) as exc:
        d_p((0, 1, 0, 1), O2, O2)
    assert exc.value.flag == "EF1"
    with pytest.raises(PreconditionError) as exc:
        d_p((0, 1, 2, 1), O2, O2)
    assert exc.value.flag == "EF2"
