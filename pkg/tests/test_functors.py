from __future__ import annotations

from itertools import product

import pytest

from contactalg.boolean import BoolHom, FiniteBooleanAlgebra, hom_from_atom_map, left_adjoint
from contactalg.contact import LocalContactStructure, overlap_algebra
from contactalg.errors import PreconditionError
from contactalg.fixtures import complete3, path3, pseudo_l
from contactalg.functors import (
    check_naturality,
    check_naturality_alg,
    psi_a_morphism,
    psi_a_object,
    psi_t_morphism,
    roundtrip,
    roundtrip_alg,
    t_embedding,
    topology_from_closed_base,
)
from contactalg.morphisms import classify_dual_morphism
from contactalg.topology import (
    SpaceMap,
    all_maps,
    all_topologies,
    chain_space,
    classify_map,
    discrete_space,
    indiscrete_space,
    make_space,
    rc_algebra,
    sierpinski_space,
)

P, Q = 0b01, 0b10


def small_spaces(max_points=3):
    for n in range(max_points + 1):
        yield from all_topologies(n)


def skeletal_maps(max_points=2):
    for X in small_spaces(max_points):
        for Y in small_spaces(max_points):
            for f in all_maps(X, Y):
                rep = classify_map(f)
                if rep["continuous"] and rep["skeletal_def"]:
                    yield f


def dskelc_homs(src, dst):
    A, B = src.algebra, dst.algebra
    for g in product(range(A.atom_count), repeat=B.atom_count):
        phi = BoolHom(A, B, g)
        prof = classify_dual_morphism(phi, src, dst)
        if prof["L1"] and prof["L2"]:
            yield phi


# -- Ψ^a on objects ------------------------------------------------------------


def test_dual_of_overlap_two_is_two_discrete_points():
    d = psi_a_object(overlap_algebra(2))
    assert d.points == ((1 << P) | (1 << 0b11), (1 << Q) | (1 << 0b11))
    assert d.lambda_table == (0, 1, 2, 3)
    assert d.space == discrete_space(2)
    assert not d.report["exploratory"] and d.sigma_infinity is None


def test_dual_of_degenerate_algebra_is_empty():
    d = psi_a_object(overlap_algebra(0))
    assert d.points == () and d.space.point_count == 0


def test_dual_of_pseudo_l_is_exploratory_single_point():
    d = psi_a_object(pseudo_l())
    assert d.space.point_count == 1
    assert d.lambda_table == (0, 1, 0, 1)
    assert d.report["exploratory"] and d.report["sigma_infinity_cluster"]
    assert d.report.info["sigma_infinity"] == ["01", "11"]


def test_dual_of_path_graph_flags_non_normality():
    d = psi_a_object(path3())
    assert d.report["extension_normal"] is False
    assert d.report["complement_identity"] is False
    assert d.report.witnesses["complement_identity"] == "100"


def test_zero_ideal_has_no_bounded_points():
    d = psi_a_object(LocalContactStructure(overlap_algebra(2), 0))
    assert d.points == () and d.report["sigma_infinity_cluster"]


@pytest.mark.parametrize("n", range(5))
def test_overlap_dual_is_discrete(n):
    d = psi_a_object(overlap_algebra(n))
    assert d.space == discrete_space(n)
    assert d.report.all("lambda_regular_closed", "complement_identity")


def test_lambda_identities_on_normal_duals():
    for sp in small_spaces():
        ca, _ = rc_algebra(sp)
        d = psi_a_object(ca)
        L, alg = d.space, ca.algebra
        for a in alg.elements():
            assert L.is_closed(d.lam(a))
            for b in alg.elements():
                assert d.lam(a | b) == d.lam(a) | d.lam(b)
                if ca.below(a, b):
                    assert d.lam(a) & ~L.interior(d.lam(b)) == 0


def test_closed_base_topology():
    sp = topology_from_closed_base(2, [0b01])
    assert sp == sierpinski_space().__class__(2, frozenset({0, 0b10, 0b11}))
    assert topology_from_closed_base(2, []) == indiscrete_space(2)
    assert topology_from_closed_base(3, [1, 2, 4]) == discrete_space(3)


# -- Ψ^t on morphisms --------------------------------------------------------------


def test_psi_t_of_constant_map():
    f = SpaceMap(discrete_space(2), discrete_space(1), (0, 0))
    assert psi_t_morphism(f).table == (0, 3)


def test_psi_t_of_open_map_is_preimage():
    f = SpaceMap(discrete_space(3), discrete_space(2), (0, 0, 1))
    phi = psi_t_morphism(f)
    _, tx = rc_algebra(f.source)
    _, ty = rc_algebra(f.target)
    assert all(tx.to_set(phi(a)) == f.preimage(ty.to_set(a)) for a in phi.source.elements())


def test_psi_t_preconditions():
    with pytest.raises(PreconditionError) as exc:
        psi_t_morphism(SpaceMap(sierpinski_space(), sierpinski_space(), (1, 0)))
    assert exc.value.flag == "continuous"
    with pytest.raises(PreconditionError) as exc:
        psi_t_morphism(SpaceMap(discrete_space(2), sierpinski_space(), (0, 1)))
    assert exc.value.flag == "skeletal"


def test_psi_t_left_adjoint_is_closure_of_image():
    for f in skeletal_maps():
        phi = psi_t_morphism(f)
        _, tx = rc_algebra(f.source)
        _, ty = rc_algebra(f.target)
        lam = left_adjoint(phi)
        for G in phi.target.elements():
            assert ty.to_set(lam[G]) == f.target.closure(f.image(tx.to_set(G)))


def test_psi_t_is_contravariantly_functorial():
    maps = list(skeletal_maps())
    for f in maps:
        for g in maps:
            if g.source == f.target:
                assert psi_t_morphism(f.compose(g)).table == psi_t_morphism(g).compose(psi_t_morphism(f)).table
    for sp in small_spaces():
        ident = psi_t_morphism(SpaceMap.identity(sp))
        assert ident.table == tuple(ident.source.elements())


def test_psi_t_of_skeletal_maps_are_dual_morphisms():
    for f in skeletal_maps():
        phi = psi_t_morphism(f)
        prof = classify_dual_morphism(phi, rc_algebra(f.target)[0], rc_algebra(f.source)[0])
        assert prof.all("boolean_hom", "L1", "L2")


# -- Ψ^a on morphisms ----------------------------------------------------------


def test_psi_a_of_identity_is_identity():
    for n in range(4):
        ca = overlap_algebra(n)
        f = psi_a_morphism(BoolHom.identity(ca.algebra), ca, ca)
        assert f.func == tuple(range(n))


def test_psi_a_follows_the_atom_map():
    phi = hom_from_atom_map(overlap_algebra(2).algebra, overlap_algebra(3).algebra, [0, 1, 1])
    f = psi_a_morphism(phi, overlap_algebra(2), overlap_algebra(3))
    assert f.func == (0, 1, 1)


def test_psi_a_rejects_non_dual_morphisms():
    O2, K3 = overlap_algebra(2), complete3()
    phi = hom_from_atom_map(O2.algebra, K3.algebra, [0, 1, 1])
    with pytest.raises(PreconditionError) as exc:
        psi_a_morphism(phi, O2, K3)
    assert exc.value.flag == "L1"


def test_psi_a_morphisms_are_continuous_and_skeletal():
    for n, m in product(range(4), repeat=2):
        src, dst = overlap_algebra(n), overlap_algebra(m)
        for phi in dskelc_homs(src, dst):
            rep = classify_map(psi_a_morphism(phi, src, dst))
            assert rep["continuous"] and rep["skeletal_def"]


def test_meet_adjoint_sends_ultrafilter_to_basis():
    # φ_Λ(u) generates φ⁻¹(u): u_q ↦ atom g(q)
    A, B = FiniteBooleanAlgebra(3), FiniteBooleanAlgebra(2)
    phi = BoolHom(A, B, (2, 0))
    lam = left_adjoint(phi)
    for q in range(2):
        assert lam[1 << q] == 1 << phi.atom_map[q]


# -- comparison maps -----------------------------------------------------------


def test_t_embedding_examples():
    assert t_embedding(discrete_space(2)).report["homeomorphism"]
    rep = t_embedding(sierpinski_space()).report
    assert rep["defined"] and not rep["injective"] and rep["surjective"]
    assert t_embedding(all_topologies(0)[0]).report["homeomorphism"]


def test_t_embedding_on_small_spaces():
    for sp in small_spaces():
        rep = t_embedding(sp).report
        if sp.is_regular:
            assert rep.all("defined", "continuous", "surjective")
        assert rep["homeomorphism"] == sp.is_hausdorff


def test_t_embedding_undefined_off_regular_spaces():
    # two open points over a shared closed point: σ_0 is not a cluster
    sp = make_space(3, [[], [0], [1], [0, 1], [0, 1, 2]])
    rep = t_embedding(sp).report
    assert rep["defined"] is False and rep.witnesses["defined"] == 0
    assert rep["homeomorphism"] is False


def test_naturality_on_discrete_maps():
    for n, m in product(range(4), repeat=2):
        for f in all_maps(discrete_space(n), discrete_space(m)):
            assert check_naturality(f)["commutes"]


def test_naturality_needs_hausdorff():
    with pytest.raises(PreconditionError) as exc:
        check_naturality(SpaceMap.identity(sierpinski_space()))
    assert exc.value.flag == "Hausdorff"


def test_algebraic_naturality_on_overlap_homs():
    for n, m in product(range(4), repeat=2):
        src, dst = overlap_algebra(n), overlap_algebra(m)
        for phi in dskelc_homs(src, dst):
            assert check_naturality_alg(phi, src, dst)["commutes"]


def test_algebraic_naturality_needs_normal_bases():
    with pytest.raises(PreconditionError):
        check_naturality_alg(BoolHom.identity(path3().algebra), path3(), path3())


# -- round trips -------------------------------------------------------------------


def test_roundtrip_on_spaces():
    rep = roundtrip(discrete_space(3))
    assert rep["homeomorphism"] and rep.info["asserted"] == ["homeomorphism"]
    rep = roundtrip(chain_space(3))
    assert rep.info["asserted"] == [] and rep.notes == ["hypothesis unmet: Hausdorff"]


def test_roundtrip_on_normal_algebras():
    for sp in small_spaces():
        ca = rc_algebra(sp)[0]
        rep = roundtrip_alg(ca)
        assert rep["hypothesis"] == ca.is_normal
        if not ca.is_normal:
            continue
        assert rep.all("hypothesis", "I_lambda_rc", "bijective", "II_boolean_iso", "III_ideal", "IV_contact")
        assert rep["ca_isomorphism"]
    assert roundtrip_alg(overlap_algebra(3)).info["asserted"] == ["ca_isomorphism", "III_ideal"]


def test_roundtrip_on_path_graph_reports_failure_without_asserting():
    rep = roundtrip_alg(path3())
    assert rep["hypothesis"] is False and rep.info["asserted"] == []
    assert rep["II_boolean_iso"] is False and rep.witnesses["II_boolean_iso"] == ("100",)


def test_roundtrip_on_pseudo_l():
    rep = roundtrip_alg(pseudo_l())
    assert rep["hypothesis"] is False
    assert rep["III_ideal"] is False and rep.witnesses["III_ideal"] == "01"
