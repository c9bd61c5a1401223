"""Clusters, ends, round filters, and the two cluster enumeration routes.

A family of elements is an ``int`` mask over element values (see
:mod:`contactalg.boolean`). Clusters are returned sorted by that mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .boolean import FiniteBooleanAlgebra, bits, enumerate_ultrafilters, family
from .contact import ContactStructure, LocalContactStructure
from .errors import BudgetError, ConsistencyError, InputError, PreconditionError
from .report import Report

DEFAULT_BUDGET_ATOMS = 4
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ClusterCheck:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Candidate:
    """An element family produced by a construction, with its cluster status."""

    members: int
    is_cluster: bool


def as_family(algebra: FiniteBooleanAlgebra, S: int | Iterable[int]) -> int:
    if isinstance(S, int):
        if S < 0 or S > algebra.full_family:
            raise InputError("family mask mentions non-elements")
        return S
    return family(algebra.check(e) for e in S)


def is_cluster(ca: ContactStructure, S: int | Iterable[int]) -> ClusterCheck:
    """K1–K3 checked in that order; the first failure names the axiom and a witness."""
    alg = ca.algebra
    S = as_family(alg, S)
    if S == 0:
        return ClusterCheck(False, "nonempty", ())
    rel = ca.relation
    members = list(bits(S))
    for a in members:
        for b in members:
            if not rel[a] >> b & 1:
                return ClusterCheck(False, "K1", (a, b))
    for a in alg.elements():
        for b in alg.elements():
            if S >> (a | b) & 1 and not S >> a & 1 and not S >> b & 1:
                return ClusterCheck(False, "K2", (a, b))
    for a in alg.elements():
        if not S >> a & 1 and S & ~rel[a] == 0:
            return ClusterCheck(False, "K3", (a,))
    return ClusterCheck(True)


def _check_budget(ca: ContactStructure, budget_atoms: int) -> None:
    n = ca.algebra.atom_count
    if n > budget_atoms:
        raise BudgetError(
            f"brute-force cluster scan over {n} atoms needs 2^{1 << n} subsets; "
            f"the oracle budget is {budget_atoms} atoms ({1 << (1 << budget_atoms):,} subsets, "
            "default 4-atom/65,536-subset cap)"
        )


def clusters_bruteforce(ca: ContactStructure, budget_atoms: int = DEFAULT_BUDGET_ATOMS) -> list[int]:
    """Every element family passing :func:`is_cluster`, by a full subset scan.

    The scan is vectorised: a family S survives the first pass iff S equals
    {a : a C b for all b ∈ S}, which is exactly K1 ∧ K3 for a symmetric
    relation. Survivors are then re-checked one by one with ``is_cluster``.
    """
    _check_budget(ca, budget_atoms)
    alg = ca.algebra
    N = alg.size
    total = 1 << N
    rows = [np.uint64(r) for r in ca.relation]
    found = []
    for start in range(1, total, _CHUNK):
        S = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        closure = np.zeros_like(S)
        for a in range(N):
            inside = (S & ~rows[a]) == 0
            closure |= inside.astype(np.uint64) << np.uint64(a)
        found.extend(int(s) for s in S[closure == S])
    return sorted(s for s in found if is_cluster(ca, s))


def is_ultrafilter_base(algebra: FiniteBooleanAlgebra, u: int) -> bool:
    """True iff the up-closure of the family ``u`` is an ultrafilter."""
    if u == 0:
        return False
    m = algebra.meet_all(bits(u))
    return bool(u >> m & 1) and m != 0 and m & (m - 1) == 0


@dataclass(frozen=True)
class SigmaResult:
    members: int
    ultrafilter_base: bool


def sigma_of(ca: ContactStructure, u: int | Iterable[int]) -> SigmaResult:
    """{a : a C b for every b ∈ u}, flagged with whether ``u`` is an ultrafilter base."""
    alg = ca.algebra
    u = as_family(alg, u)
    out = 0
    for a in alg.elements():
        if u & ~ca.relation[a] == 0:
            out |= 1 << a
    return SigmaResult(out, is_ultrafilter_base(alg, u))


def clusters_via_ultrafilters(ca: ContactStructure) -> list[Candidate]:
    """{σ_u : u ∈ Ult(B)}, deduplicated, each tagged with its cluster status.

    On a normal contact algebra every output must be a cluster; a failure
    there raises ``ConsistencyError``.
    """
    out = {}
    for u in enumerate_ultrafilters(ca.algebra):
        s = sigma_of(ca, u).members
        if s not in out:
            out[s] = bool(is_cluster(ca, s))
    normal = ca.is_normal
    result = [Candidate(s, ok) for s, ok in sorted(out.items())]
    bad = [c for c in result if not c.is_cluster]
    if normal and bad:
        raise ConsistencyError(
            f"σ_u is not a cluster on a normal contact algebra: {ca.algebra.fmt_family(bad[0].members)}"
        )
    return result


def enumerate_clusters(ca: ContactStructure, budget_atoms: int = DEFAULT_BUDGET_ATOMS) -> list[int]:
    """All clusters: subset scan within budget, else the ultrafilter route on NCAs."""
    if ca.algebra.atom_count <= budget_atoms:
        return clusters_bruteforce(ca, budget_atoms)
    if not ca.is_normal:
        _check_budget(ca, budget_atoms)
    return [c.members for c in clusters_via_ultrafilters(ca)]


# -- filters, round filters and ends -------------------------------------


def d_of(algebra: FiniteBooleanAlgebra, S: int) -> int:
    """d(S) = {b : b* ∉ S}."""
    return family(b for b in algebra.elements() if not S >> algebra.complement(b) & 1)


def is_filter(algebra: FiniteBooleanAlgebra, S: int) -> bool:
    """Proper filter: non-empty, without 0, upward closed, closed under meets."""
    if S == 0 or S & 1:
        return False
    for a in bits(S):
        for b in algebra.elements():
            if a & ~b == 0 and not S >> b & 1:
                return False
        for b in bits(S):
            if not S >> (a & b) & 1:
                return False
    return True


def end_report(ca: ContactStructure, S: int | Iterable[int]) -> Report:
    alg = ca.algebra
    S = as_family(alg, S)
    bel = ca.below_rows
    rep = Report()
    filt = is_filter(alg, S)
    rep.set("filter", filt)
    round_ = filt and all(S & _inv_below(ca, b) for b in bits(S))
    rep.set("round_filter", round_)
    e1 = True
    for b in bits(S):
        for c in bits(S):
            if not any(a != 0 and bel[a] >> b & 1 and bel[a] >> c & 1 for a in bits(S)):
                e1 = False
                rep.witnesses["E1"] = (alg.fmt(b), alg.fmt(c))
                break
        if not e1:
            break
    rep.set("E1", e1)
    e2 = True
    for a in alg.elements():
        for b in bits(bel[a]):
            if not S >> alg.complement(a) & 1 and not S >> b & 1:
                e2 = False
                rep.witnesses["E2"] = (alg.fmt(a), alg.fmt(b))
                break
        if not e2:
            break
    rep.set("E2", e2)
    rep.set("end", e1 and e2)
    return rep


def _inv_below(ca: ContactStructure, b: int) -> int:
    """Family of all a with a ≪ b."""
    return family(a for a in ca.algebra.elements() if ca.below_rows[a] >> b & 1)


def round_filters(ca: ContactStructure) -> list[int]:
    """All round filters, by scanning every element family (≤ 3 atoms)."""
    if ca.algebra.atom_count > 3:
        raise BudgetError("round-filter scan is limited to 3 atoms (256 families)")
    return [S for S in range(1, ca.algebra.full_family + 1) if end_report(ca, S)["round_filter"]]


# -- witnesses and the local case ------------------------------------------


def enlarge_witness(ca: ContactStructure, sigma: int, a: int) -> int:
    """The first b (in element order) with b ∉ σ and a ≪ b."""
    alg = ca.algebra
    alg.check(a)
    if not ca.is_normal:
        raise PreconditionError("contact structure is not normal (C5/C6 unmet)", flag="C5,C6")
    if not is_cluster(ca, sigma):
        raise PreconditionError("σ is not a cluster")
    if sigma >> a & 1:
        raise PreconditionError(f"{alg.fmt(a)} already lies in σ")
    for b in alg.elements():
        if not sigma >> b & 1 and ca.below(a, b):
            return b
    raise ConsistencyError("no enlargement witness on a normal contact algebra")


def sigma_infinity(lca: LocalContactStructure) -> Candidate:
    """The unbounded elements, with their cluster status in (B, C_ρ)."""
    if lca.bounded(lca.algebra.one):
        raise PreconditionError("σ_∞ needs 1 ∉ ideal")
    s = lca.algebra.full_family & ~lca.ideal_family
    return Candidate(s, bool(is_cluster(lca.extension, s)))


def bounded_clusters(lca: LocalContactStructure, budget_atoms: int = DEFAULT_BUDGET_ATOMS) -> list[int]:
    """Clusters of (B, C_ρ) meeting the ideal."""
    ideal = lca.ideal_family
    return [s for s in enumerate_clusters(lca.extension, budget_atoms) if s & ideal]


def infinity_and_bounded(
    lca: LocalContactStructure, budget_atoms: int = DEFAULT_BUDGET_ATOMS
) -> tuple[Candidate, list[int]]:
    return sigma_infinity(lca), bounded_clusters(lca, budget_atoms)
