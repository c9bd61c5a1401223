"""Contact, normal-contact and local-contact structures on finite algebras."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

from .boolean import FiniteBooleanAlgebra, bits, family
from .errors import InputError
from .report import Report

CONTACT_AXIOMS = ("C1", "C2", "C3", "C4", "C5", "C6", "CON")
BELOW_AXIOMS = tuple(f"<<{i}" for i in range(1, 8))


@dataclass(frozen=True)
class ContactStructure:
    """A Boolean algebra with a symmetric binary relation on its elements.

    ``relation[a]`` is the family mask of all ``b`` with ``a C b``. ``form``
    records how the relation was entered: ``"atom_matrix"`` (lifted through
    additivity, so C4 holds by construction), ``"pairs"`` (taken verbatim)
    or ``"derived"`` (built by another construction).
    """

    algebra: FiniteBooleanAlgebra
    relation: tuple[int, ...]
    form: str = "pairs"

    def __post_init__(self) -> None:
        if len(self.relation) != self.algebra.size:
            raise InputError("relation must list one family mask per element")
        full = self.algebra.full_family
        for a, row in enumerate(self.relation):
            if row & ~full:
                raise InputError(f"relation row {a} mentions non-elements")
        for a in self.algebra.elements():
            for b in bits(self.relation[a]):
                if not self.relation[b] >> a & 1:
                    f = self.algebra.fmt
                    raise InputError(f"contact is not symmetric: ({f(a)}, {f(b)}) without ({f(b)}, {f(a)})")

    # construction -------------------------------------------------------

    @classmethod
    def from_atom_pairs(cls, atom_count: int, pairs: Iterable[tuple[int, int]]) -> ContactStructure:
        """Lift an atom-level relation: a C b iff some atom of a touches some atom of b.

        Pairs are unordered; the diagonal is only present if listed.
        """
        alg = FiniteBooleanAlgebra(atom_count)
        reach = [0] * atom_count
        for pair in pairs:
            p, q = _pair(pair)
            for x in (p, q):
                if not isinstance(x, int) or not 0 <= x < atom_count:
                    raise InputError(f"atom pair {pair!r} out of range for {atom_count} atoms")
            reach[p] |= 1 << q
            reach[q] |= 1 << p
        near = [0] * alg.size
        for a in alg.elements():
            for p in bits(a):
                near[a] |= reach[p]
        rel = tuple(family(b for b in alg.elements() if near[a] & b) for a in alg.elements())
        return cls(alg, rel, "atom_matrix")

    @classmethod
    def from_element_pairs(cls, atom_count: int, pairs: Iterable[tuple[int, int]]) -> ContactStructure:
        """Take the relation verbatim; an asymmetric listing is an input error."""
        alg = FiniteBooleanAlgebra(atom_count)
        rows = [0] * alg.size
        for pair in pairs:
            a, b = _pair(pair)
            alg.check(a)
            alg.check(b)
            rows[a] |= 1 << b
        return cls(alg, tuple(rows), "pairs")

    @classmethod
    def from_predicate(
        cls, algebra: FiniteBooleanAlgebra, pred: Callable[[int, int], bool], form: str = "derived"
    ) -> ContactStructure:
        rel = tuple(
            family(b for b in algebra.elements() if pred(a, b)) for a in algebra.elements()
        )
        return cls(algebra, rel, form)

    # queries ------------------------------------------------------------

    def contacts(self, a: int, b: int) -> bool:
        return bool(self.relation[a] >> b & 1)

    def below(self, a: int, b: int) -> bool:
        """Non-tangential inclusion: a ≪ b iff a does not contact b*."""
        return not self.contacts(a, self.algebra.complement(b))

    @cached_property
    def below_rows(self) -> tuple[int, ...]:
        """``below_rows[a]`` is the family of all ``b`` with ``a ≪ b``."""
        alg = self.algebra
        return tuple(
            family(b for b in alg.elements() if not self.relation[a] >> alg.complement(b) & 1)
            for a in alg.elements()
        )

    @cached_property
    def atom_matrix(self) -> tuple[tuple[bool, ...], ...]:
        n = self.algebra.atom_count
        return tuple(tuple(self.contacts(1 << p, 1 << q) for q in range(n)) for p in range(n))

    def atom_lift(self) -> ContactStructure:
        """The additive relation generated by the atom matrix."""
        n = self.algebra.atom_count
        pairs = [(p, q) for p in range(n) for q in range(n) if self.atom_matrix[p][q]]
        return ContactStructure.from_atom_pairs(n, pairs)

    @cached_property
    def report(self) -> Report:
        return axiom_report(self)

    @property
    def is_contact_algebra(self) -> bool:
        return self.report.all("C1", "C2", "C3", "C4")

    @property
    def is_normal(self) -> bool:
        return self.report.all("C1", "C2", "C3", "C4", "C5", "C6")


def _pair(pair) -> tuple[int, int]:
    try:
        a, b = pair
    except (TypeError, ValueError):
        raise InputError(f"expected a pair, got {pair!r}") from None
    return a, b


# -- fixture generators ----------------------------------------------------


def overlap_algebra(n: int) -> ContactStructure:
    """a C b iff a ∧ b ≠ 0 on ``n`` atoms."""
    if n < 0:
        raise InputError("atom count must be nonnegative")
    return ContactStructure.from_atom_pairs(n, [(p, p) for p in range(n)])


def adjacency_algebra(vertex_count: int, edges: Iterable[tuple[int, int]]) -> ContactStructure:
    """Atoms are vertices; atoms touch iff equal or adjacent."""
    pairs = [(p, p) for p in range(vertex_count)]
    for edge in edges:
        p, q = _pair(edge)
        if not (isinstance(p, int) and isinstance(q, int)) or not (
            0 <= p < vertex_count and 0 <= q < vertex_count
        ):
            raise InputError(f"edge {edge!r} mentions an undeclared vertex")
        if p == q:
            raise InputError(f"edge {edge!r} is a loop")
        pairs.append((p, q))
    return ContactStructure.from_atom_pairs(vertex_count, pairs)


# -- axiom reports ------------------------------------------------------------


def axiom_report(ca: ContactStructure) -> Report:
    """Check C1–C6, CON and ≪1–≪7 exhaustively.

    Element pairs are scanned in lexicographic order of their bitsets, and
    the first counterexample for each failing axiom is kept as its witness.
    """
    alg = ca.algebra
    E = alg.elements()
    one = alg.one
    rel = ca.relation
    bel = ca.below_rows
    f = alg.fmt
    full = alg.full_family
    rep = Report()
    rep.info["form"] = ca.form
    rep.info["atom_count"] = alg.atom_count

    def first(it):
        return next(it, None)

    w = first(f(a) for a in E if a != 0 and not rel[a] >> a & 1)
    rep.set("C1", w is None, w)
    w = first((f(a), f(b)) for a in E for b in bits(rel[a]) if a == 0 or b == 0)
    rep.set("C2", w is None, w)
    w = first((f(a), f(b)) for a in E for b in bits(rel[a]) if not rel[b] >> a & 1)
    rep.set("C3", w is None, w)
    w = first(
        (f(a), f(b), f(c))
        for a in E
        for b in E
        for c in E
        if bool(rel[a] >> (b | c) & 1) != bool(rel[a] >> b & 1 or rel[a] >> c & 1)
    )
    rep.set("C4", w is None, w)
    # C5: a(-C)b ⇒ ∃c: a(-C)c and b(-C)c*, i.e. c ∈ ~rel[a] ∩ below[b]
    w = first((f(a), f(b)) for a in E for b in E if not rel[a] >> b & 1 and not (~rel[a] & bel[b] & full))
    rep.set("C5", w is None, w)
    w = first(f(a) for a in E if a != one and not any(b != 0 and not rel[b] >> a & 1 for b in E))
    rep.set("C6", w is None, w)
    w = first(f(a) for a in E if a not in (0, one) and not rel[a] >> alg.complement(a) & 1)
    rep.set("CON", w is None, w)

    # the derived ≪ relation
    def below(a: int, b: int) -> bool:
        return bool(bel[a] >> b & 1)

    w = first((f(a), f(b)) for a in E for b in bits(bel[a]) if a & ~b)
    rep.set("<<1", w is None, w)
    rep.set("<<2", below(0, 0), (f(0), f(0)))
    # ≪3 splits into left- and right-monotonicity, which together are equivalent
    w = first(
        (f(a), f(b), f(c))
        for b in E
        for c in bits(bel[b])
        for a in E
        if a & ~b == 0 and not below(a, c)
    )
    if w is None:
        w = first(
            (f(b), f(c), f(t))
            for b in E
            for c in bits(bel[b])
            for t in E
            if c & ~t == 0 and not below(b, t)
        )
    rep.set("<<3", w is None, w)
    w = first(
        (f(a), f(b), f(c))
        for c in E
        for a in E
        for b in E
        if below(a, c) and below(b, c) and not below(a | b, c)
    )
    rep.set("<<4", w is None, w)
    inv = _inverse_rows(bel, alg)
    w = first((f(a), f(c)) for a in E for c in bits(bel[a]) if not (bel[a] & inv[c]))
    rep.set("<<5", w is None, w)
    w = first(f(a) for a in E if a != 0 and not any(b != 0 and below(b, a) for b in E))
    rep.set("<<6", w is None, w)
    w = first(
        (f(a), f(b))
        for a in E
        for b in bits(bel[a])
        if not below(alg.complement(b), alg.complement(a))
    )
    rep.set("<<7", w is None, w)

    lifted = ca if ca.form == "atom_matrix" else ca.atom_lift()
    w = first(
        (f(a), f(b)) for a in E for b in E if bool(rel[a] >> b & 1) != bool(lifted.relation[a] >> b & 1)
    )
    rep.set("atom_lift", w is None, w)

    rep.set("C5<=><<5", rep["C5"] == rep["<<5"])
    rep.set("C6<=><<6", rep["C6"] == rep["<<6"])
    if not alg.degenerate:
        rep.set("C6&C4=>C2", not (rep["C6"] and rep["C4"]) or rep["C2"])
    return rep


def _inverse_rows(rows: tuple[int, ...], alg: FiniteBooleanAlgebra) -> tuple[int, ...]:
    """Transpose of a relation given by rows: ``out[b]`` = {a : b ∈ rows[a]}."""
    out = [0] * alg.size
    for a in alg.elements():
        for b in bits(rows[a]):
            out[b] |= 1 << a
    return tuple(out)


def below(ca: ContactStructure, a: int, b: int) -> bool:
    """a ≪ b in ``ca``."""
    ca.algebra.check(a)
    ca.algebra.check(b)
    return ca.below(a, b)


# -- local contact structures ------------------------------------------------


@dataclass(frozen=True)
class LocalContactStructure:
    """A contact structure ``base`` (relation ρ) with the principal ideal below
    ``ideal_generator`` as its bounded elements."""

    base: ContactStructure
    ideal_generator: int

    def __post_init__(self) -> None:
        self.base.algebra.check(self.ideal_generator)

    @classmethod
    def from_ideal_elements(cls, base: ContactStructure, elements: Iterable[int]) -> LocalContactStructure:
        """Accept an explicit ideal; it must be the down-set of its join."""
        alg = base.algebra
        elems = {alg.check(e) for e in elements}
        gen = alg.join_all(elems)
        down = {e for e in alg.elements() if e & ~gen == 0}
        if elems != down:
            missing = sorted(down - elems)
            raise InputError(
                "ideal is not the down-set of its join"
                + (f"; missing {alg.fmt(missing[0])}" if missing else "")
            )
        return cls(base, gen)

    @classmethod
    def compact(cls, base: ContactStructure) -> LocalContactStructure:
        return cls(base, base.algebra.one)

    @property
    def algebra(self) -> FiniteBooleanAlgebra:
        return self.base.algebra

    def bounded(self, a: int) -> bool:
        return a & ~self.ideal_generator == 0

    @property
    def ideal_family(self) -> int:
        return self.algebra.principal_down(self.ideal_generator)

    @property
    def whole(self) -> bool:
        return self.ideal_generator == self.algebra.one

    @cached_property
    def extension(self) -> ContactStructure:
        return alexandroff_extension(self)

    @cached_property
    def report(self) -> Report:
        return lca_axiom_report(self)

    @property
    def satisfies_lca_axioms(self) -> bool:
        return self.report.all("C1", "C2", "C3", "C4", "BC1", "BC2", "BC3")


def lca_axiom_report(lca: LocalContactStructure) -> Report:
    """BC1–BC3 checked exhaustively, plus the base contact report."""
    ca = lca.base
    alg = ca.algebra
    E = alg.elements()
    f = alg.fmt
    bel = ca.below_rows
    ideal = lca.ideal_family
    rep = Report()
    rep.info["ideal_generator"] = f(lca.ideal_generator)
    w = None
    for a in bits(ideal):
        for c in bits(bel[a]):
            # need b ∈ IB with a ≪ b ≪ c
            if not any(bel[b] >> c & 1 for b in bits(bel[a] & ideal)):
                w = (f(a), f(c))
                break
        if w:
            break
    rep.set("BC1", w is None, w)
    w = next(
        (
            (f(a), f(b))
            for a in E
            for b in bits(ca.relation[a])
            if not any(ca.relation[a] >> (c & b) & 1 for c in bits(ideal))
        ),
        None,
    )
    rep.set("BC2", w is None, w)
    w = next(
        (f(a) for a in E if a != 0 and not any(bel[b] >> a & 1 for b in bits(ideal & ~1))),
        None,
    )
    rep.set("BC3", w is None, w)
    rep.merge(ca.report)
    return rep


def alexandroff_extension(lca: LocalContactStructure) -> ContactStructure:
    """a C_ρ b iff a ρ b or both a and b are unbounded."""
    alg = lca.algebra
    unbounded = alg.full_family & ~lca.ideal_family
    rel = tuple(
        row | (unbounded if unbounded >> a & 1 else 0) for a, row in enumerate(lca.base.relation)
    )
    return ContactStructure(alg, rel, "derived")
