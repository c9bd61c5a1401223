"""Morphism-condition checkers for dual and E-morphisms, and the D_l / D_p conversions.

A dual morphism is a Boolean homomorphism φ: A → B between local contact
structures (A, ρ, IB) and (B, η, IB'). An E-morphism is an arbitrary table
ψ: A → B. Contact-only conditions (F1, CO, EF4, EC7) use the Alexandroff
extensions, which coincide with ρ and η when the ideals are whole.
Every condition is checked on its own, without short-circuiting.
"""

from __future__ import annotations

from typing import Sequence

from .boolean import BoolHom, Table, bits, meet_formula_adjoint, right_adjoint, validate_hom
from .contact import ContactStructure, LocalContactStructure
from .errors import InputError, PreconditionError
from .report import Report

DUAL_FLAGS = ("boolean_hom", "L1", "EL1", "L2", "L3", "LO", "LO_prime", "F1", "CO")
E_FLAGS = ("EF1", "EF2", "EF3", "EF4", "EL4", "EL5", "EL6", "EL7", "EC7")


def _local(s: ContactStructure | LocalContactStructure) -> LocalContactStructure:
    return s if isinstance(s, LocalContactStructure) else LocalContactStructure.compact(s)


def _first(it):
    return next(it, None)


def classify_dual_morphism(
    phi: BoolHom | Sequence[int],
    src: ContactStructure | LocalContactStructure,
    dst: ContactStructure | LocalContactStructure,
) -> Report:
    src, dst = _local(src), _local(dst)
    A, B = src.algebra, dst.algebra
    table = phi.table if isinstance(phi, BoolHom) else tuple(phi)
    if isinstance(phi, BoolHom) and (phi.source != A or phi.target != B):
        raise InputError("homomorphism algebras do not match the given structures")
    if len(table) != A.size:
        raise InputError(f"table has {len(table)} entries, source has {A.size} elements")
    fa, fb = A.fmt, B.fmt
    rho, eta = src.base, dst.base
    C, C2 = src.extension, dst.extension
    lam = meet_formula_adjoint(table, A, B)
    rep = Report()
    rep.set("boolean_hom", validate_hom(table, A, B).all())
    w = _first(
        (fa(a), fa(b))
        for a in A.elements()
        for b in A.elements()
        if eta.contacts(table[a], table[b]) and not rho.contacts(a, b)
    )
    rep.set("L1", w is None, w)
    w = _first(
        (fb(a), fb(b))
        for a in B.elements()
        for b in B.elements()
        if eta.contacts(a, b) and not rho.contacts(lam[a], lam[b])
    )
    rep.set("EL1", w is None, w)
    rep.set("L1<=>EL1", rep["L1"] == rep["EL1"])
    w = _first(fb(b) for b in bits(dst.ideal_family) if not src.bounded(lam[b]))
    rep.set("L2", w is None, w)
    w = _first(fa(a) for a in bits(src.ideal_family) if not dst.bounded(table[a]))
    rep.set("L3", w is None, w)
    w = _first(
        (fa(a), fb(b))
        for a in A.elements()
        for b in bits(dst.ideal_family)
        if rho.contacts(lam[b], a) and not eta.contacts(b, table[a])
    )
    rep.set("LO", w is None, w)
    w = _first(
        (fa(a), fb(b))
        for a in A.elements()
        for b in B.elements()
        if rho.contacts(a, lam[b]) and not eta.contacts(table[a], b)
    )
    rep.set("LO_prime", w is None, w)
    w = _first(
        (fa(a), fa(b))
        for a in A.elements()
        for b in A.elements()
        if C2.contacts(table[a], table[b]) and not C.contacts(a, b)
    )
    rep.set("F1", w is None, w)
    w = _first(
        (fa(a), fb(b))
        for a in A.elements()
        for b in B.elements()
        if C.contacts(a, lam[b]) and not C2.contacts(table[a], b)
    )
    rep.set("CO", w is None, w)
    return rep


def classify_e_morphism(
    psi: Sequence[int],
    src: ContactStructure | LocalContactStructure,
    dst: ContactStructure | LocalContactStructure,
) -> Report:
    """EF1–EF4, EL4–EL7 and EC7; adjoint-dependent flags are None when EF2 fails."""
    src, dst = _local(src), _local(dst)
    A, B = src.algebra, dst.algebra
    psi = tuple(psi)
    if len(psi) != A.size:
        raise InputError(f"table has {len(psi)} entries, source has {A.size} elements")
    for a in A.elements():
        B.check(psi[a])
    fa, fb = A.fmt, B.fmt
    rho, eta = src.base, dst.base
    C, C2 = src.extension, dst.extension
    rep = Report()
    w = _first(fa(a) for a in A.elements() if (psi[a] == 0) != (a == 0))
    rep.set("EF1", w is None, w)
    w = _first(
        (fa(a), fa(b))
        for a in A.elements()
        for b in A.elements()
        if psi[a | b] != psi[a] | psi[b]
    )
    if w is None and psi[0] != 0:
        w = (fa(0), fa(0))
    rep.set("EF2", w is None, w)
    w = _first(
        (fa(a), fb(b))
        for a in A.elements()
        for b in B.elements()
        if b & ~psi[a] == 0 and not any(psi[c] == b for c in A.elements() if c & ~a == 0)
    )
    rep.set("EF3", w is None, w)
    w = _first(
        (fa(a), fa(b))
        for a in A.elements()
        for b in A.elements()
        if C.contacts(a, b) and not C2.contacts(psi[a], psi[b])
    )
    rep.set("EF4", w is None, w)
    w = _first(
        (fa(a), fa(b))
        for a in A.elements()
        for b in A.elements()
        if rho.contacts(a, b) and not eta.contacts(psi[a], psi[b])
    )
    rep.set("EL4", w is None, w)
    w = _first(fa(a) for a in bits(src.ideal_family) if not dst.bounded(psi[a]))
    rep.set("EL5", w is None, w)
    if not rep["EF2"]:
        for name in ("EL6", "EL7", "EC7"):
            rep.set(name, None)
        rep.notes.append("EL6, EL7, EC7: hypothesis unmet: EF2 false, no right adjoint")
        return rep
    P = right_adjoint(psi, A, B)
    rep.info["right_adjoint"] = [fa(P[b]) for b in B.elements()]
    w = _first(fb(b) for b in bits(dst.ideal_family) if not src.bounded(P[b]))
    rep.set("EL6", w is None, w)
    w = _first(
        (fa(a), fb(b))
        for a in bits(src.ideal_family)
        for b in B.elements()
        if eta.contacts(psi[a], b) and not rho.contacts(a, P[b])
    )
    rep.set("EL7", w is None, w)
    w = _first(
        (fa(a), fb(b))
        for a in A.elements()
        for b in B.elements()
        if C2.contacts(psi[a], b) and not C.contacts(a, P[b])
    )
    rep.set("EC7", w is None, w)
    return rep


def d_l(
    phi: BoolHom,
    src: ContactStructure | LocalContactStructure,
    dst: ContactStructure | LocalContactStructure,
) -> Table:
    """D_l(φ) = φ_Λ, for φ satisfying L1 and L2."""
    prof = classify_dual_morphism(phi, src, dst)
    for flag in ("boolean_hom", "L1", "L2"):
        if not prof[flag]:
            raise PreconditionError(f"D_l needs a DSkeLC-morphism: {flag} fails", flag=flag)
    return meet_formula_adjoint(phi.table, phi.source, phi.target)


def d_p(
    psi: Sequence[int],
    src: ContactStructure | LocalContactStructure,
    dst: ContactStructure | LocalContactStructure,
) -> BoolHom:
    """D_p(ψ) = ψ_P : dst → src, for ψ satisfying EF1–EF3, EL4 and EL5."""
    src, dst = _local(src), _local(dst)
    prof = classify_e_morphism(psi, src, dst)
    for flag in ("EF1", "EF2", "EF3", "EL4", "EL5"):
        if not prof[flag]:
            raise PreconditionError(f"D_p needs an ESkeLC-morphism: {flag} fails", flag=flag)
    table = right_adjoint(tuple(psi), src.algebra, dst.algebra)
    return BoolHom.from_table(dst.algebra, src.algebra, table)
