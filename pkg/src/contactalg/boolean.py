"""Finite atomic Boolean algebras, ultrafilters, homomorphisms and adjoints.

Elements are plain ``int`` atom-sets: bit ``i`` set means atom ``i`` lies
below the element. Families of elements (ultrafilters, clusters) are also
``int`` masks, this time over element values: bit ``e`` set means element
``e`` belongs to the family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ConsistencyError, InputError, PreconditionError
from .report import Report

MAX_ATOMS = 16

Table = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def family(elements: Iterable[int]) -> int:
    """Pack element values into a family mask."""
    out = 0
    for e in elements:
        out |= 1 << e
    return out


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    """The powerset algebra of ``atom_count`` atoms.

    ``atom_count == 0`` is the degenerate algebra in which 0 = 1.
    """

    atom_count: int

    def __post_init__(self) -> None:
        if not isinstance(self.atom_count, int) or self.atom_count < 0:
            raise InputError(f"atom_count must be a nonnegative int, got {self.atom_count!r}")
        if self.atom_count > MAX_ATOMS:
            raise InputError(f"atom_count {self.atom_count} exceeds the {MAX_ATOMS}-atom cap")

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.size - 1

    @property
    def degenerate(self) -> bool:
        return self.atom_count == 0

    @property
    def full_family(self) -> int:
        """Family mask containing every element."""
        return (1 << self.size) - 1

    def elements(self) -> range:
        return range(self.size)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.atom_count)]

    def check(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a > self.one:
            raise InputError(f"{a!r} is not an element of the {self.atom_count}-atom algebra")
        return a

    def join(self, a: int, b: int) -> int:
        return a | b

    def meet(self, a: int, b: int) -> int:
        return a & b

    def complement(self, a: int) -> int:
        return self.one ^ a

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.one
        for e in elems:
            out &= e
        return out

    def join_all(self, elems: Iterable[int]) -> int:
        out = 0
        for e in elems:
            out |= e
        return out

    def fmt(self, a: int) -> str:
        """Little-endian bit string: ``"101"`` is the element {atom 0, atom 2}."""
        return "".join("1" if a >> i & 1 else "0" for i in range(self.atom_count))

    def parse(self, s: str) -> int:
        if not isinstance(s, str) or len(s) != self.atom_count or set(s) - {"0", "1"}:
            raise InputError(
                f"expected a {self.atom_count}-character 0/1 string, got {s!r}"
            )
        return sum(1 << i for i, ch in enumerate(s) if ch == "1")

    def fmt_family(self, fam: int) -> list[str]:
        return [self.fmt(e) for e in bits(fam)]

    def principal_up(self, a: int) -> int:
        """Family of all elements above ``a``."""
        return family(e for e in self.elements() if a & ~e == 0)

    def principal_down(self, a: int) -> int:
        """Family of all elements below ``a``."""
        return family(e for e in self.elements() if e & ~a == 0)


# -- ultrafilters ---------------------------------------------------------


def enumerate_ultrafilters(algebra: FiniteBooleanAlgebra) -> list[int]:
    """One principal ultrafilter per atom, in atom order.

    Every ultrafilter of a finite algebra is principal at an atom, so this is
    all of Ult(B). The degenerate algebra has none.
    """
    return [algebra.principal_up(p) for p in algebra.atoms()]


def ultrafilter_atom(algebra: FiniteBooleanAlgebra, u: int) -> int | None:
    """The atom generating the ultrafilter ``u``, or None if ``u`` is not one."""
    for p in algebra.atoms():
        if algebra.principal_up(p) == u:
            return p
    return None


# -- homomorphisms --------------------------------------------------------


@dataclass(frozen=True)
class BoolHom:
    """A Boolean homomorphism ``source -> target`` stored as an atom function.

    ``atom_map[q]`` is the index of the source atom that target atom ``q``
    maps back to; the homomorphism sends ``a`` to the set of target atoms
    whose image lies in ``a``.
    """

    source: FiniteBooleanAlgebra
    target: FiniteBooleanAlgebra
    atom_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.atom_map) != self.target.atom_count:
            raise InputError(
                f"atom map has {len(self.atom_map)} entries, target has "
                f"{self.target.atom_count} atoms"
            )
        for q, p in enumerate(self.atom_map):
            if not isinstance(p, int) or not 0 <= p < self.source.atom_count:
                raise InputError(f"atom map sends target atom {q} to {p!r}, out of range")

    def __call__(self, a: int) -> int:
        return self.table[a]

    @cached_property
    def table(self) -> Table:
        out = []
        for a in self.source.elements():
            img = 0
            for q, p in enumerate(self.atom_map):
                if a >> p & 1:
                    img |= 1 << q
            out.append(img)
        return tuple(out)

    @classmethod
    def identity(cls, algebra: FiniteBooleanAlgebra) -> BoolHom:
        return cls(algebra, algebra, tuple(range(algebra.atom_count)))

    @classmethod
    def from_table(
        cls, source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra, table: Sequence[int]
    ) -> BoolHom:
        """Validate an element table and convert it to atom form."""
        report = validate_hom(table, source, target)
        if not report.all():
            raise PreconditionError(
                f"table is not a Boolean homomorphism: fails {', '.join(report.failing())}",
                flag=report.failing()[0],
            )
        atom_map = []
        for q in range(target.atom_count):
            owners = [i for i in range(source.atom_count) if table[1 << i] >> q & 1]
            if len(owners) != 1:
                raise ConsistencyError(f"target atom {q} lies under {len(owners)} source atoms")
            atom_map.append(owners[0])
        hom = cls(source, target, tuple(atom_map))
        if hom.table != tuple(table):
            raise ConsistencyError("atom form does not reproduce the input table")
        return hom

    def compose(self, after: BoolHom) -> BoolHom:
        """``after ∘ self``."""
        if after.source != self.target:
            raise InputError("homomorphisms are not composable")
        return BoolHom(self.source, after.target, tuple(self.atom_map[p] for p in after.atom_map))

    @property
    def injective(self) -> bool:
        return set(self.atom_map) == set(range(self.source.atom_count))

    @property
    def surjective(self) -> bool:
        return len(set(self.atom_map)) == len(self.atom_map)


def hom_from_atom_map(
    source: FiniteBooleanAlgebra,
    target: FiniteBooleanAlgebra,
    g: Sequence[int] | Callable[[int], int],
) -> BoolHom:
    """Build φ: source → target with φ(a) = {q : g(q) ∈ a}.

    ``g`` maps target atom indices to source atom indices, either as a
    sequence or a callable.
    """
    if callable(g):
        try:
            g = [g(q) for q in range(target.atom_count)]
        except Exception as exc:  # partial callables surface as input errors
            raise InputError(f"atom function is not total: {exc}") from exc
    hom = BoolHom(source, target, tuple(g))
    report = validate_hom(hom.table, source, target)
    if not report.all():
        raise ConsistencyError(f"atom-map hom fails {report.failing()}")
    return hom


def validate_hom(
    table: Sequence[int], source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra
) -> Report:
    """Check exhaustively which Boolean operations ``table`` preserves."""
    rep = Report()
    if len(table) != source.size:
        raise InputError(f"table has {len(table)} entries, source has {source.size} elements")
    for a in source.elements():
        target.check(table[a])
    rep.set("preserves_0", table[0] == target.zero, witness=source.fmt(0))
    rep.set("preserves_1", table[source.one] == target.one, witness=source.fmt(source.one))

    def first_pair(pred: Callable[[int, int], bool]) -> tuple[str, str] | None:
        for a in source.elements():
            for b in source.elements():
                if not pred(a, b):
                    return (source.fmt(a), source.fmt(b))
        return None

    w = first_pair(lambda a, b: table[a | b] == table[a] | table[b])
    rep.set("preserves_join", w is None, witness=w)
    w = first_pair(lambda a, b: table[a & b] == table[a] & table[b])
    rep.set("preserves_meet", w is None, witness=w)
    bad = next(
        (a for a in source.elements() if table[source.complement(a)] != target.complement(table[a])),
        None,
    )
    rep.set("preserves_complement", bad is None, witness=None if bad is None else source.fmt(bad))
    return rep


# -- adjoints -------------------------------------------------------------


def meet_formula_adjoint(
    table: Sequence[int], source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra
) -> Table:
    """For a monotone map ``source -> target``, b ↦ ⋀{a : table[a] ≥ b}."""
    out = []
    for b in target.elements():
        out.append(source.meet_all(a for a in source.elements() if b & ~table[a] == 0))
    return tuple(out)


def left_adjoint(phi: BoolHom) -> Table:
    """φ_Λ as a table over target elements, computed two ways and cross-checked.

    The meet formula is the definition; the atom route sends each target atom
    to its source atom and joins. A mismatch raises ``ConsistencyError``.
    """
    report = validate_hom(phi.table, phi.source, phi.target)
    if not report.all():
        raise PreconditionError(f"not a Boolean homomorphism: {report.failing()}")
    by_meet = meet_formula_adjoint(phi.table, phi.source, phi.target)
    by_atoms = tuple(
        phi.source.join_all(1 << phi.atom_map[q] for q in bits(b))
        for b in phi.target.elements()
    )
    if by_meet != by_atoms:
        raise ConsistencyError(f"left adjoint routes disagree: {by_meet} vs {by_atoms}")
    return by_meet


def join_preservation_witness(
    table: Sequence[int], source: FiniteBooleanAlgebra
) -> tuple[int, int] | None:
    """First pair whose join is not preserved; ``(0, 0)`` if the bottom is not fixed."""
    if table[0] != 0:
        return (0, 0)
    for a in source.elements():
        for b in source.elements():
            if table[a | b] != table[a] | table[b]:
                return (a, b)
    return None


def right_adjoint(
    psi: Sequence[int], source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra
) -> Table:
    """ψ_P for a join-preserving ``psi: source -> target``.

    Returns a table over target elements with b ≤ ψ_P(a) iff ψ(b) ≤ a,
    which is verified exhaustively before returning.
    """
    if len(psi) != source.size:
        raise InputError(f"table has {len(psi)} entries, source has {source.size} elements")
    w = join_preservation_witness(psi, source)
    if w is not None:
        raise PreconditionError(
            f"map does not preserve joins at ({source.fmt(w[0])}, {source.fmt(w[1])})",
            flag="EF2",
        )
    out = tuple(
        source.join_all(b for b in source.elements() if psi[b] & ~a == 0)
        for a in target.elements()
    )
    for a in target.elements():
        for b in source.elements():
            if (b & ~out[a] == 0) != (psi[b] & ~a == 0):
                raise ConsistencyError("right adjoint fails the adjunction")
    return out


def compose_tables(first: Sequence[int], second: Sequence[int]) -> Table:
    """``second ∘ first`` for element tables."""
    return tuple(second[x] for x in first)
