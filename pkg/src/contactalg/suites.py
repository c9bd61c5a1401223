"""The nine exhaustive acceptance suites, runnable over any corpus.

Each suite returns a :class:`SuiteResult`; ``failures`` holds one line per
violated instance (capped), so a failing run says exactly what broke.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable

from .boolean import (
    BoolHom,
    FiniteBooleanAlgebra,
    bits,
    compose_tables,
    left_adjoint,
    right_adjoint,
    validate_hom,
)
from .clusters import (
    clusters_bruteforce,
    clusters_via_ultrafilters,
    infinity_and_bounded,
)
from .contact import ContactStructure, LocalContactStructure
from .fixtures import Corpus
from .functors import check_naturality, psi_a_morphism, psi_a_object, psi_t_morphism, roundtrip, roundtrip_alg
from .morphisms import classify_dual_morphism, classify_e_morphism, d_l, d_p
from .topology import FiniteSpace, SpaceMap, all_maps, classify_map, discrete_space, rc_algebra, standard_lca

MAX_FAILURES = 20

TITLES = {
    1: "compact duality round-trip (discrete spaces, 0-5 points)",
    2: "algebra round-trip (overlap NCAs, <= 4 atoms)",
    3: "cluster oracle equivalence",
    4: "morphism duality, naturality, functoriality (compact case)",
    5: "Galois adjoint suite (<= 3 atoms)",
    6: "map classifier laws (topologies on <= 3 points)",
    7: "connectedness transfer",
    8: "equivalence functors D_l / D_p",
    9: "local constructions and PseudoL",
}


@dataclass
class SuiteResult:
    number: int
    title: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, message: str | Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(message() if callable(message) else message)
            elif len(self.failures) == MAX_FAILURES:
                self.failures.append("... further failures suppressed")

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.checked} checks, {self.seconds:.1f}s)"

    def to_json(self) -> dict[str, Any]:
        return {
            "criterion": self.number,
            "title": self.title,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "failures": list(self.failures),
            "details": self.details,
        }


@dataclass
class Golden:
    """Golden-file comparison; ``directory=None`` disables it."""

    directory: Path | None = None
    update: bool = False

    def compare(self, result: SuiteResult, name: str, value: Any) -> None:
        if self.directory is None:
            result.details.setdefault("golden", {})[name] = "not compared"
            return
        path = self.directory / f"{name}.json"
        text = json.dumps(value, sort_keys=True, indent=1) + "\n"
        if self.update or not path.exists():
            if not self.update:
                result.expect(False, f"golden file {path} is missing (rerun with --update-golden)")
                return
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            result.details.setdefault("golden", {})[name] = "written"
            return
        same = json.loads(path.read_text()) == json.loads(text)
        result.details.setdefault("golden", {})[name] = "match" if same else "mismatch"
        result.expect(same, f"golden mismatch: {path}")


# -- corpus selectors ---------------------------------------------------------


def _unique_spaces(corpus: Corpus, pred: Callable[[FiniteSpace], bool]) -> list[tuple[str, FiniteSpace]]:
    seen = set()
    out = []
    for name, sp in corpus.spaces.items():
        if pred(sp) and sp not in seen:
            seen.add(sp)
            out.append((name, sp))
    return out


def _is_discrete(sp: FiniteSpace) -> bool:
    return len(sp.opens) == 1 << sp.point_count


def _is_overlap(ca: ContactStructure) -> bool:
    return all(
        ca.contacts(a, b) == bool(a & b) for a in ca.algebra.elements() for b in ca.algebra.elements()
    )


def _structures(corpus: Corpus, max_atoms: int) -> list[tuple[str, LocalContactStructure]]:
    out = [(n, LocalContactStructure.compact(ca)) for n, ca in corpus.algebras.items() if ca.algebra.atom_count <= max_atoms]
    out += [(n, s) for n, s in corpus.lcas.items() if s.algebra.atom_count <= max_atoms]
    seen = set()
    uniq = []
    for n, s in out:
        if s not in seen:
            seen.add(s)
            uniq.append((n, s))
    return uniq


def _homs(A: FiniteBooleanAlgebra, B: FiniteBooleanAlgebra) -> list[BoolHom]:
    return [BoolHom(A, B, g) for g in product(range(A.atom_count), repeat=B.atom_count)]


# -- criteria ----------------------------------------------------------------


def criterion_1(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(1, TITLES[1])
    spaces = _unique_spaces(corpus, lambda s: _is_discrete(s) and s.point_count <= 5)
    r.details["spaces"] = [n for n, _ in spaces]
    for n in range(6):
        r.expect(discrete_space(n) in {s for _, s in spaces}, f"corpus lacks a discrete space on {n} points")
    for name, sp in spaces:
        rep = roundtrip(sp)
        r.expect(rep["homeomorphism"] is True, f"{name}: t_X is not a homeomorphism: {rep.to_json()}")
    return r


def criterion_2(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(2, TITLES[2])
    algs = [
        (n, ca)
        for n, ca in corpus.algebras.items()
        if ca.algebra.atom_count <= 4 and _is_overlap(ca) and ca.is_normal
    ]
    r.details["algebras"] = [n for n, _ in algs]
    counts = {ca.algebra.atom_count for _, ca in algs}
    for n in range(5):
        r.expect(n in counts, f"corpus lacks an overlap NCA with {n} atoms")
    for name, ca in algs:
        rep = roundtrip_alg(ca)
        r.expect(rep.all("ca_isomorphism", "III_ideal"), f"{name}: λ is not a CA-isomorphism: {rep.to_json()}")
    return r


def cluster_status(ca: ContactStructure) -> dict[str, Any]:
    """Per-cluster ultrafilter status of a contact structure, in golden-file form."""
    alg = ca.algebra
    brute = clusters_bruteforce(ca)
    cands = clusters_via_ultrafilters(ca)
    sigmas = {c.members for c in cands}
    return {
        "normal": ca.is_normal,
        "clusters": [
            {
                "members": alg.fmt_family(s),
                "contains_ultrafilter": any(alg.principal_up(p) & ~s == 0 for p in alg.atoms()),
                "is_some_sigma_u": s in sigmas,
            }
            for s in brute
        ],
        "sigma_u": [{"members": alg.fmt_family(c.members), "is_cluster": c.is_cluster} for c in cands],
    }


def criterion_3(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(3, TITLES[3])
    nonnormal = {}
    nca = []
    for name, ca in corpus.algebras.items():
        if ca.algebra.atom_count > 4 or not ca.is_contact_algebra:
            continue
        st = cluster_status(ca)
        if ca.is_normal:
            nca.append(name)
            brute = clusters_bruteforce(ca)
            via = [c.members for c in clusters_via_ultrafilters(ca)]
            r.expect(via == brute, f"{name}: ultrafilter route {via} != brute force {brute}")
            r.expect(
                all(c["contains_ultrafilter"] for c in st["clusters"]),
                f"{name}: a cluster of an NCA contains no ultrafilter",
            )
        else:
            nonnormal[name] = st
    r.details["nca_fixtures"] = nca
    r.details["non_normal_fixtures"] = len(nonnormal)
    r.details["non_normal_clusters_without_ultrafilter"] = sum(
        not c["contains_ultrafilter"] for st in nonnormal.values() for c in st["clusters"]
    )
    r.details["non_normal_sigma_u_not_cluster"] = sum(
        not c["is_cluster"] for st in nonnormal.values() for c in st["sigma_u"]
    )
    r.expect(bool(nca), "no NCA fixture with <= 4 atoms in the corpus")
    golden.compare(r, "criterion3_non_normal", nonnormal)
    if "P3" in corpus.algebras:
        p3 = corpus.algebras["P3"]
        golden.compare(r, "p3_clusters", [p3.algebra.fmt_family(s) for s in clusters_bruteforce(p3)])
    return r


def criterion_4(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(4, TITLES[4])
    spaces = [s for _, s in _unique_spaces(corpus, lambda s: _is_discrete(s) and s.point_count <= 3)]
    r.details["spaces"] = sorted(s.point_count for s in spaces)
    cache: dict[SpaceMap, BoolHom] = {}
    for X, Y in product(spaces, repeat=2):
        for f in all_maps(X, Y):
            phi = psi_t_morphism(f)
            cache[f] = phi
            tag = f"f={f.func} ({X.point_count}->{Y.point_count})"
            r.expect(validate_hom(phi.table, phi.source, phi.target).all(), f"{tag}: Ψ^t(f) is not a hom")
            prof = classify_dual_morphism(phi, standard_lca(Y), standard_lca(X))
            bad = [k for k in ("F1", "L1", "L2", "L3", "LO", "CO") if not prof[k]]
            r.expect(not bad, f"{tag}: Ψ^t(f) fails {bad}")
            r.expect(check_naturality(f)["commutes"] is True, f"{tag}: naturality square fails")
    small = [s for s in spaces if s.point_count <= 2]
    triples = 0
    for X, Y, Z in product(small, repeat=3):
        for f in all_maps(X, Y):
            for g in all_maps(Y, Z):
                triples += 1
                gf = f.compose(g)
                lhs = psi_t_morphism(gf).table
                rhs = compose_tables(psi_t_morphism(g).table, psi_t_morphism(f).table)
                r.expect(lhs == rhs, f"Ψ^t(g∘f) != Ψ^t(f)∘Ψ^t(g) for f={f.func}, g={g.func}")
                pf, pg = psi_t_morphism(f), psi_t_morphism(g)
                comp = pg.compose(pf)  # pf ∘ pg : RC(Z) → RC(X)
                lx, ly, lz = standard_lca(X), standard_lca(Y), standard_lca(Z)
                a_comp = psi_a_morphism(comp, lz, lx)
                a_f = psi_a_morphism(pf, ly, lx)
                a_g = psi_a_morphism(pg, lz, ly)
                r.expect(
                    a_comp.func == a_f.compose(a_g).func,
                    f"Ψ^a(φ_f∘φ_g) != Ψ^a(φ_g)∘Ψ^a(φ_f) for f={f.func}, g={g.func}",
                )
    r.details["maps"] = len(cache)
    r.details["composable_pairs"] = triples
    return r


def criterion_5(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(5, TITLES[5])
    sizes = sorted({ca.algebra.atom_count for ca in corpus.algebras.values() if ca.algebra.atom_count <= 3} | {0, 1, 2, 3})
    algs = [FiniteBooleanAlgebra(n) for n in sizes]
    homs = {}
    for A, B in product(algs, repeat=2):
        for phi in _homs(A, B):
            lam = left_adjoint(phi)
            homs[phi] = lam
            t = phi.table
            tag = f"φ atom_map={phi.atom_map} ({A.atom_count}->{B.atom_count})"
            r.expect(all(b & ~t[lam[b]] == 0 for b in B.elements()), f"{tag}: Λ1 fails")
            r.expect(all(lam[t[a]] & ~a == 0 for a in A.elements()), f"{tag}: Λ2 fails")
            r.expect(all(t[lam[t[a]]] == t[a] for a in A.elements()), f"{tag}: φ∘φ_Λ∘φ != φ")
            r.expect(all(lam[t[lam[b]]] == lam[b] for b in B.elements()), f"{tag}: φ_Λ∘φ∘φ_Λ != φ_Λ")
            r.expect(
                lam[0] == 0 and all(lam[a | b] == lam[a] | lam[b] for a in B.elements() for b in B.elements()),
                f"{tag}: φ_Λ does not preserve joins",
            )
            injective = len(set(t)) == len(t)
            surjective = set(t) == set(B.elements())
            r.expect(injective == all(lam[t[a]] == a for a in A.elements()), f"{tag}: injectivity criterion")
            r.expect(surjective == all(t[lam[b]] == b for b in B.elements()), f"{tag}: surjectivity criterion")
            r.expect(all(lam[b] != 0 for b in B.elements() if b), f"{tag}: φ_Λ(b) = 0 for some b != 0")
            disjoint = all(a & lam[b] == 0 for a in A.elements() for b in B.elements() if t[a] & b == 0)
            modular = all(lam[t[a] & b] == a & lam[b] for a in A.elements() for b in B.elements())
            r.expect(disjoint, f"{tag}: φ(a) ∧ b = 0 does not force a ∧ φ_Λ(b) = 0")
            r.expect(modular, f"{tag}: φ_Λ(φ(a) ∧ b) != a ∧ φ_Λ(b)")
            r.expect(right_adjoint(lam, B, A) == t, f"{tag}: (φ_Λ)_P != φ")
    pairs = 0
    for phi, lam in homs.items():
        for psi, lam2 in homs.items():
            if psi.source != phi.target:
                continue
            pairs += 1
            comp = phi.compose(psi)  # psi ∘ phi
            r.expect(
                left_adjoint(comp) == compose_tables(lam2, lam),
                f"(φ'∘φ)_Λ != φ_Λ∘φ'_Λ for {phi.atom_map}, {psi.atom_map}",
            )
    r.details["homs"] = len(homs)
    r.details["composable_pairs"] = pairs
    return r


def criterion_6(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(6, TITLES[6])
    spaces = [s for _, s in _unique_spaces(corpus, lambda s: s.point_count <= 3)]
    per_n = {n: sum(s.point_count == n for s in spaces) for n in range(4)}
    r.details["spaces_per_point_count"] = per_n
    for n, want in zip(range(4), (1, 1, 4, 29)):
        r.expect(per_n[n] == want, f"expected all {want} topologies on {n} points, corpus has {per_n[n]}")
    maps = 0
    for X, Y in product(spaces, repeat=2):
        for f in all_maps(X, Y):
            maps += 1
            rep = classify_map(f)
            tag = lambda: f"f={f.func} from opens {X.sorted_opens} to {Y.sorted_opens}"
            if rep["continuous"]:
                r.expect(
                    rep["skeletal_def"] == rep["skeletal_image"] == rep["skeletal_rc"],
                    lambda: f"{tag()}: skeletal criteria disagree {rep.flags}",
                )
            r.expect(not rep["quasi_open"] or rep["skeletal_def"], lambda: f"{tag()}: quasi-open but not skeletal")
            if rep["source_pi_regular"] and rep["closed"]:
                r.expect(
                    rep["quasi_open"] == rep["skeletal_def"],
                    lambda: f"{tag()}: π-regular closed map with quasi-open != skeletal",
                )
            if rep["closed"] and rep["irreducible"]:
                r.expect(rep["quasi_open"], lambda: f"{tag()}: closed irreducible but not quasi-open")
                r.expect(
                    all(f.sharp(U) for U in X.opens if U),
                    lambda: f"{tag()}: f^#(U) empty for a non-empty open U",
                )
    r.details["maps"] = maps
    return r


def criterion_7(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(7, TITLES[7])
    spaces = _unique_spaces(corpus, lambda s: s.point_count <= 3 or (_is_discrete(s) and s.point_count <= 5))
    for name, sp in spaces:
        ca, _ = rc_algebra(sp)
        r.expect(ca.report["CON"] == sp.is_connected, f"{name}: CON={ca.report['CON']} but connected={sp.is_connected}")
    r.details["spaces"] = len(spaces)
    return r


def _e_candidates(A: FiniteBooleanAlgebra, B: FiniteBooleanAlgebra) -> list[tuple[int, ...]]:
    """Every join-preserving map A → B (atoms sent anywhere)."""
    out = []
    for images in product(B.elements(), repeat=A.atom_count):
        out.append(tuple(B.join_all(images[i] for i in bits(a)) for a in A.elements()))
    return out


def criterion_8(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(8, TITLES[8])
    structs = _structures(corpus, 3)
    r.details["structures"] = len(structs)
    n_dual = n_dskelc = n_e = n_eskelc = 0
    for (na, S), (nb, T) in product(structs, repeat=2):
        A, B = S.algebra, T.algebra
        for phi in _homs(A, B):
            n_dual += 1
            prof = classify_dual_morphism(phi, S, T)
            lam = left_adjoint(phi)
            eprof = classify_e_morphism(lam, T, S)
            tag = f"φ={phi.atom_map} {na}->{nb}"
            r.expect(prof["L3"] == eprof["EL6"], f"{tag}: L3 != EL6 on φ_Λ")
            r.expect(prof["LO"] == eprof["EL7"], f"{tag}: LO != EL7 on φ_Λ")
            if S.whole and T.whole:
                r.expect(prof["CO"] == eprof["EC7"], f"{tag}: CO != EC7 on φ_Λ")
            if not (prof["L1"] and prof["L2"]):
                continue
            n_dskelc += 1
            psi = d_l(phi, S, T)
            bad = [k for k in ("EF1", "EF2", "EF3", "EL4", "EL5") if not eprof[k]]
            r.expect(not bad, f"{tag}: D_l(φ) fails {bad}")
            if not bad:
                back = d_p(psi, T, S)
                r.expect(back.table == phi.table, f"{tag}: D_p(D_l(φ)) != φ")
        if A.atom_count > 2:
            continue
        for psi in _e_candidates(A, B):
            n_e += 1
            eprof = classify_e_morphism(psi, S, T)
            if not eprof.all("EF1", "EF2", "EF3"):
                continue
            P = right_adjoint(psi, A, B)
            tag = f"ψ={[B.fmt(x) for x in psi]} {na}->{nb}"
            r.expect(validate_hom(P, B, A).all(), f"{tag}: ψ_P is not a Boolean hom")
            phi = BoolHom.from_table(B, A, P)
            prof = classify_dual_morphism(phi, T, S)
            r.expect(eprof["EL6"] == prof["L3"], f"{tag}: EL6 != L3 on ψ_P")
            r.expect(eprof["EL7"] == prof["LO"], f"{tag}: EL7 != LO on ψ_P")
            if S.whole and T.whole:
                r.expect(eprof["EC7"] == prof["CO"], f"{tag}: EC7 != CO on ψ_P")
            if not (eprof["EL4"] and eprof["EL5"]):
                continue
            n_eskelc += 1
            hom = d_p(psi, S, T)
            r.expect(validate_hom(hom.table, hom.source, hom.target).all(), f"{tag}: D_p(ψ) not a hom")
            r.expect(prof["L1"] and prof["L2"], f"{tag}: D_p(ψ) is not a DSkeLC-morphism")
            r.expect(d_l(hom, T, S) == psi, f"{tag}: D_l(D_p(ψ)) != ψ")
    r.details.update(
        dual_candidates=n_dual, dskelc_morphisms=n_dskelc, e_candidates=n_e, eskelc_morphisms=n_eskelc
    )
    r.expect(n_dskelc > 0 and n_eskelc > 0, "no classified morphisms found in the corpus")
    return r


def pseudo_l_summary(lca: LocalContactStructure) -> dict[str, Any]:
    alg = lca.algebra
    inf, bounded = infinity_and_bounded(lca)
    dual = psi_a_object(lca)
    return {
        "ideal_generator": alg.fmt(lca.ideal_generator),
        "lca_axioms": {k: lca.report[k] for k in ("BC1", "BC2", "BC3")},
        "lca_witnesses": {k: v for k, v in lca.report.witnesses.items() if k.startswith("BC")},
        "sigma_infinity": alg.fmt_family(inf.members),
        "sigma_infinity_is_cluster": inf.is_cluster,
        "bounded_clusters": [alg.fmt_family(s) for s in bounded],
        "dual_point_count": dual.space.point_count,
        "dual_opens": [sorted(bits(U)) for U in dual.space.sorted_opens],
        "lambda_table": {alg.fmt(a): sorted(bits(dual.lam(a))) for a in alg.elements()},
        "exploratory": dual.report["exploratory"],
    }


def criterion_9(corpus: Corpus, golden: Golden) -> SuiteResult:
    r = SuiteResult(9, TITLES[9])
    structs = [(n, LocalContactStructure.compact(ca)) for n, ca in corpus.algebras.items()]
    structs += list(corpus.lcas.items())
    full_lcas = 0
    for name, s in structs:
        if s.whole and s.satisfies_lca_axioms:
            full_lcas += 1
            r.expect(s.extension.is_normal, f"{name}: extension of a full-ideal LCA is not normal")
    r.details["full_ideal_lcas"] = full_lcas
    bases = {}
    for name, s in structs:
        bases.setdefault(s.base, name)
    checked = 0
    for base, name in bases.items():
        if not (base.report["C1"] and base.report["C4"]):
            continue
        for g in base.algebra.elements():
            lca = LocalContactStructure(base, g)
            checked += 1
            if lca.report.all("BC1", "BC2", "BC3"):
                r.expect(lca.whole, f"{name} with ideal below {base.algebra.fmt(g)}: BC1-BC3 hold on a proper ideal")
    r.details["ideals_checked"] = checked
    pl = corpus.lcas.get("PseudoL")
    r.expect(pl is not None, "corpus lacks the PseudoL fixture")
    if pl is not None:
        summary = pseudo_l_summary(pl)
        r.expect(summary["sigma_infinity"] == ["01", "11"], f"PseudoL σ_∞ = {summary['sigma_infinity']}")
        r.expect(summary["sigma_infinity_is_cluster"] is True, "PseudoL σ_∞ is not a cluster")
        r.expect(summary["dual_point_count"] == 1, f"PseudoL dual has {summary['dual_point_count']} points")
        r.expect(summary["bounded_clusters"] == [["10", "11"]], f"PseudoL BClust = {summary['bounded_clusters']}")
        golden.compare(r, "pseudol", summary)
    return r


CRITERIA: dict[int, Callable[[Corpus, Golden], SuiteResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_criterion(number: int, corpus: Corpus, golden: Golden | None = None) -> SuiteResult:
    start = time.perf_counter()
    result = CRITERIA[number](corpus, golden or Golden())
    result.seconds = time.perf_counter() - start
    return result


def run_all(corpus: Corpus, golden: Golden | None = None, only: list[int] | None = None) -> list[SuiteResult]:
    return [run_criterion(n, corpus, golden) for n in (only or sorted(CRITERIA))]
