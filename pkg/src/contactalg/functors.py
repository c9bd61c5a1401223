"""The dual functors Ψ^t and Ψ^a, the comparison maps t_X and λ_B, and round-trips.

Dual-space points are clusters (element-family masks) listed in ascending
mask order; point sets of the dual space are masks over those indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .boolean import BoolHom, family
from .clusters import (
    DEFAULT_BUDGET_ATOMS,
    Candidate,
    bounded_clusters,
    sigma_infinity,
    sigma_of,
)
from .contact import ContactStructure, LocalContactStructure
from .errors import ConsistencyError, PreconditionError
from .morphisms import classify_dual_morphism
from .report import Report
from .topology import (
    FiniteSpace,
    SpaceMap,
    classify_map,
    point_cluster,
    points_of,
    rc_algebra,
    standard_lca,
)


def as_local(s: ContactStructure | LocalContactStructure) -> LocalContactStructure:
    if isinstance(s, LocalContactStructure):
        return s
    return LocalContactStructure.compact(s)


def topology_from_closed_base(n: int, base: list[int]) -> FiniteSpace:
    """Coarsest topology on n points in which every member of ``base`` is closed."""
    full = (1 << n) - 1
    unions = {0}
    frontier = set(base)
    while frontier:
        new = {U | B for U in unions for B in frontier} | frontier
        frontier = new - unions
        unions |= new
    closed = {full}
    for F in sorted(unions):
        closed |= {F & G for G in closed}
    return FiniteSpace(n, frozenset(full ^ F for F in closed))


def is_homeomorphism(f: SpaceMap) -> bool:
    X, Y = f.source, f.target
    if X.point_count != Y.point_count or len(set(f.func)) != X.point_count:
        return False
    return all(X.is_open(f.preimage(V)) for V in Y.opens) and all(
        Y.is_open(f.image(U)) for U in X.opens
    )


# -- Ψ^a on objects -----------------------------------------------------------


@dataclass(frozen=True)
class DualSpaceResult:
    source: LocalContactStructure
    space: FiniteSpace
    points: tuple[int, ...]
    lambda_table: tuple[int, ...]
    sigma_infinity: Candidate | None
    report: Report = field(compare=False, hash=False)

    def point_of(self, cluster: int) -> int | None:
        try:
            return self.points.index(cluster)
        except ValueError:
            return None

    def lam(self, a: int) -> int:
        return self.lambda_table[a]


@lru_cache(maxsize=None)
def _psi_a_object(lca: LocalContactStructure, budget_atoms: int) -> DualSpaceResult:
    alg = lca.algebra
    ext = lca.extension
    points = tuple(bounded_clusters(lca, budget_atoms))
    lam = tuple(
        family(i for i, s in enumerate(points) if s >> a & 1) for a in alg.elements()
    )
    space = topology_from_closed_base(len(points), list(lam))
    rep = Report()
    rep.info["points"] = [alg.fmt_family(s) for s in points]
    local = not lca.bounded(alg.one)
    rep.set("local", local)
    inf = None
    if local:
        inf = sigma_infinity(lca)
        rep.set("sigma_infinity_cluster", inf.is_cluster)
        rep.info["sigma_infinity"] = alg.fmt_family(inf.members)
    normal = ext.is_normal
    rep.set("extension_normal", normal)
    w = next((a for a in alg.elements() if not space.is_regular_closed(lam[a])), None)
    rep.set("lambda_regular_closed", w is None, None if w is None else alg.fmt(w))
    w = next(
        (
            a
            for a in alg.elements()
            if space.full ^ lam[a] != space.interior(lam[alg.complement(a)])
        ),
        None,
    )
    rep.set("complement_identity", w is None, None if w is None else alg.fmt(w))
    exploratory = local and not (inf.is_cluster and lca.satisfies_lca_axioms)
    rep.set("exploratory", exploratory)
    if exploratory:
        rep.notes.append(
            "exploratory: local structure fails the LCA axioms or σ_∞ is not a cluster; "
            "points are the bounded clusters with the subspace topology"
        )
    if not normal:
        rep.notes.append("hypothesis unmet: Alexandroff extension is not normal")
    return DualSpaceResult(lca, space, points, lam, inf, rep)


def psi_a_object(
    s: ContactStructure | LocalContactStructure, budget_atoms: int = DEFAULT_BUDGET_ATOMS
) -> DualSpaceResult:
    """Ψ^a on objects: bounded clusters of (B, C_ρ) with closed base {λ(a)}."""
    return _psi_a_object(as_local(s), budget_atoms)


# -- Ψ^t on morphisms -----------------------------------------------------------


def psi_t_morphism(f: SpaceMap) -> BoolHom:
    """Ψ^t(f): RC(Y) → RC(X), F ↦ cl(f⁻¹(int F)), cross-checked against cl(int(f⁻¹F))."""
    rep = classify_map(f)
    if not rep["continuous"]:
        raise PreconditionError("Ψ^t(f) needs a continuous map", flag="continuous")
    if not rep["skeletal_def"]:
        raise PreconditionError(
            f"Ψ^t(f) needs a skeletal map (witness open set {rep.witnesses.get('skeletal_def')})",
            flag="skeletal",
        )
    X, Y = f.source, f.target
    ca_x, tab_x = rc_algebra(X)
    ca_y, tab_y = rc_algebra(Y)
    table = []
    for F in tab_y.sets:
        G = X.closure(f.preimage(Y.interior(F)))
        if G != X.closure(X.interior(f.preimage(F))):
            raise ConsistencyError(f"Ψ^t formulas disagree at F = {points_of(F)}")
        table.append(tab_x.to_element(G))
    return BoolHom.from_table(ca_y.algebra, ca_x.algebra, table)


# -- Ψ^a on morphisms ---------------------------------------------------------


def psi_a_morphism(
    phi: BoolHom,
    src: ContactStructure | LocalContactStructure,
    dst: ContactStructure | LocalContactStructure,
    budget_atoms: int = DEFAULT_BUDGET_ATOMS,
) -> SpaceMap:
    """Ψ^a(φ): Ψ^a(dst) → Ψ^a(src), σ_u ↦ σ_{φ⁻¹(u)}.

    Every ultrafilter inside a cluster is tried, so independence of the
    choice is checked exhaustively.
    """
    src, dst = as_local(src), as_local(dst)
    prof = classify_dual_morphism(phi, src, dst)
    for flag in ("boolean_hom", "L1", "L2"):
        if not prof[flag]:
            raise PreconditionError(f"φ is not a DSkeLC-morphism: {flag} fails", flag=flag)
    d_src = psi_a_object(src, budget_atoms)
    d_dst = psi_a_object(dst, budget_atoms)
    hyp = d_src.report["extension_normal"] and d_dst.report["extension_normal"]
    why = "internal bug" if hyp else "hypothesis unmet: an Alexandroff extension is not normal"
    B = dst.algebra
    func = []
    for sigma in d_dst.points:
        images = set()
        for q, p in enumerate(phi.atom_map):
            u = B.principal_up(1 << q)
            if u & ~sigma:
                continue
            pre = phi.source.principal_up(1 << p)  # φ⁻¹(u_q) = u_{g(q)}
            images.add(sigma_of(src.extension, pre).members)
        if len(images) != 1:
            raise ConsistencyError(
                f"Ψ^a(φ) ill-defined at cluster {B.fmt_family(sigma)}: "
                f"{len(images)} candidate images ({why})"
            )
        (image,) = images
        idx = d_src.point_of(image)
        if idx is None:
            raise ConsistencyError(
                f"σ_(φ⁻¹u) = {phi.source.fmt_family(image)} is not a point of the dual space ({why})"
            )
        func.append(idx)
    f = SpaceMap(d_dst.space, d_src.space, tuple(func))
    if hyp:
        rep = classify_map(f)
        if not (rep["continuous"] and rep["skeletal_def"]):
            raise ConsistencyError("Ψ^a(φ) is not continuous and skeletal (internal bug)")
    return f


# -- comparison maps ----------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingResult:
    map: SpaceMap | None
    report: Report


def t_embedding(space: FiniteSpace, budget_atoms: int = DEFAULT_BUDGET_ATOMS) -> EmbeddingResult:
    """t_X: x ↦ σ_x into Ψ^a(Ψ^t(X))."""
    dual = psi_a_object(standard_lca(space), budget_atoms)
    rep = Report()
    func = []
    missing = None
    for x in range(space.point_count):
        idx = dual.point_of(point_cluster(space, x)[0])
        if idx is None and missing is None:
            missing = x
        func.append(idx)
    rep.set("defined", missing is None, missing)
    if missing is not None:
        for name in ("injective", "surjective", "continuous", "homeomorphism"):
            rep.set(name, False)
        rep.notes.append(f"σ_{missing} is not a point of the dual space")
        return EmbeddingResult(None, rep)
    f = SpaceMap(space, dual.space, tuple(func))
    rep.set("injective", len(set(func)) == len(func))
    rep.set("surjective", set(func) == set(range(dual.space.point_count)))
    rep.set("continuous", bool(classify_map(f)["continuous"]))
    rep.set("homeomorphism", is_homeomorphism(f))
    return EmbeddingResult(f, rep)


def check_naturality(f: SpaceMap, budget_atoms: int = DEFAULT_BUDGET_ATOMS) -> Report:
    """f̂(σ_x) = σ_{f(x)} for every point x, where f̂ = Ψ^a(Ψ^t(f))."""
    X, Y = f.source, f.target
    if not (X.is_hausdorff and Y.is_hausdorff):
        raise PreconditionError("naturality needs Hausdorff spaces", flag="Hausdorff")
    phi = psi_t_morphism(f)
    f_hat = psi_a_morphism(phi, standard_lca(Y), standard_lca(X), budget_atoms)
    t_x = t_embedding(X, budget_atoms).map
    t_y = t_embedding(Y, budget_atoms).map
    rep = Report()
    bad = next(
        (x for x in range(X.point_count) if f_hat.func[t_x.func[x]] != t_y.func[f.func[x]]), None
    )
    rep.set("commutes", bad is None, bad)
    return rep


def check_naturality_alg(
    phi: BoolHom,
    src: ContactStructure | LocalContactStructure,
    dst: ContactStructure | LocalContactStructure,
    budget_atoms: int = DEFAULT_BUDGET_ATOMS,
) -> Report:
    """λ_B ∘ φ = Ψ^t(Ψ^a(φ)) ∘ λ_A, elementwise on A."""
    src, dst = as_local(src), as_local(dst)
    for name, s in (("source", src), ("target", dst)):
        if not s.base.is_normal:
            raise PreconditionError(f"{name} is not a normal contact algebra", flag="C5,C6")
    f = psi_a_morphism(phi, src, dst, budget_atoms)
    d_src = psi_a_object(src, budget_atoms)
    d_dst = psi_a_object(dst, budget_atoms)
    X, Y = f.source, f.target
    rep = Report()
    bad = None
    for a in phi.source.elements():
        lhs = d_dst.lam(phi(a))
        rhs = X.closure(f.preimage(Y.interior(d_src.lam(a))))
        if lhs != rhs:
            bad = phi.source.fmt(a)
            break
    rep.set("commutes", bad is None, bad)
    return rep


# -- round trips ------------------------------------------------------------


def roundtrip(space: FiniteSpace, budget_atoms: int = DEFAULT_BUDGET_ATOMS) -> Report:
    """Is t_X a homeomorphism onto Ψ^a(Ψ^t(X))? Asserted only for Hausdorff X."""
    emb = t_embedding(space, budget_atoms)
    rep = Report()
    rep.set("hausdorff", space.is_hausdorff)
    rep.merge(emb.report)
    rep.info["asserted"] = ["homeomorphism"] if space.is_hausdorff else []
    if not space.is_hausdorff:
        rep.notes.append("hypothesis unmet: Hausdorff")
    return rep


def roundtrip_alg(
    s: ContactStructure | LocalContactStructure, budget_atoms: int = DEFAULT_BUDGET_ATOMS
) -> Report:
    """Is λ an isomorphism onto (RC(L), ρ_L, CR(L))? Asserted only when the hypotheses hold.

    Items: I λ(a) ∈ RC(L); II λ is a Boolean isomorphism onto RC(L);
    III b ∈ ideal iff λ(b) ∈ CR(L) (= RC(L) here); IV a ρ b iff λ(a) ∩ λ(b) ≠ ∅.
    """
    lca = as_local(s)
    alg = lca.algebra
    dual = psi_a_object(lca, budget_atoms)
    L = dual.space
    lam = dual.lambda_table
    rep = Report()
    if lca.whole:
        hyp = lca.base.is_normal
        rep.set("hypothesis", hyp)
        if not hyp:
            rep.notes.append("hypothesis unmet: not a normal contact algebra")
    else:
        hyp = lca.satisfies_lca_axioms
        rep.set("hypothesis", hyp)
        if not hyp:
            rep.notes.append("hypothesis unmet: BC1-BC3 fail on a proper ideal")
    w = next((a for a in alg.elements() if not L.is_regular_closed(lam[a])), None)
    rep.set("I_lambda_rc", w is None, None if w is None else alg.fmt(w))
    bijective = sorted(set(lam)) == sorted(L.regular_closed) and len(set(lam)) == len(lam)
    rep.set("bijective", bijective)
    w = None
    for a in alg.elements():
        if lam[alg.complement(a)] != L.closure(L.full ^ lam[a]):
            w = (alg.fmt(a),)
            break
        for b in alg.elements():
            if lam[a | b] != lam[a] | lam[b] or lam[a & b] != L.closure(L.interior(lam[a] & lam[b])):
                w = (alg.fmt(a), alg.fmt(b))
                break
        if w:
            break
    rep.set("II_boolean_iso", bijective and w is None, w)
    w = next((b for b in alg.elements() if not lca.bounded(b)), None)
    rep.set("III_ideal", w is None, None if w is None else alg.fmt(w))
    w = next(
        (
            (alg.fmt(a), alg.fmt(b))
            for a in alg.elements()
            for b in alg.elements()
            if lca.base.contacts(a, b) != bool(lam[a] & lam[b])
        ),
        None,
    )
    rep.set("IV_contact", w is None, w)
    rep.set("ca_isomorphism", rep.all("I_lambda_rc", "II_boolean_iso", "IV_contact"))
    rep.info["asserted"] = ["ca_isomorphism", "III_ideal"] if hyp else []
    return rep
