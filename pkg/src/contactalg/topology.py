"""Finite topological spaces, regular-closed algebras and map classifiers.

Point sets are ``int`` masks over point indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

from .boolean import FiniteBooleanAlgebra, bits
from .contact import ContactStructure, LocalContactStructure
from .errors import ConsistencyError, InputError
from .report import Report

MAX_POINTS = 12


def points_of(mask: int) -> list[int]:
    return list(bits(mask))


def mask_of(points: Iterable[int]) -> int:
    out = 0
    for p in points:
        out |= 1 << p
    return out


@dataclass(frozen=True)
class FiniteSpace:
    """A finite set ``{0, ..., point_count - 1}`` with an explicit family of opens."""

    point_count: int
    opens: frozenset[int]

    def __post_init__(self) -> None:
        n = self.point_count
        if not isinstance(n, int) or n < 0 or n > MAX_POINTS:
            raise InputError(f"point_count must be an int in [0, {MAX_POINTS}], got {n!r}")
        full = (1 << n) - 1
        opens = self.opens
        for U in opens:
            if not isinstance(U, int) or U < 0 or U & ~full:
                raise InputError(f"open set {U!r} is not a subset of the {n} points")
        if 0 not in opens:
            raise InputError("opens must contain the empty set")
        if full not in opens:
            raise InputError(f"opens must contain the whole space {points_of(full)}")
        for U in opens:
            for V in opens:
                if U | V not in opens:
                    raise InputError(f"opens not closed under union: {points_of(U)} ∪ {points_of(V)}")
                if U & V not in opens:
                    raise InputError(
                        f"opens not closed under intersection: {points_of(U)} ∩ {points_of(V)}"
                    )

    @property
    def full(self) -> int:
        return (1 << self.point_count) - 1

    @cached_property
    def sorted_opens(self) -> tuple[int, ...]:
        return tuple(sorted(self.opens))

    @cached_property
    def closeds(self) -> frozenset[int]:
        return frozenset(self.full ^ U for U in self.opens)

    @cached_property
    def sorted_closeds(self) -> tuple[int, ...]:
        return tuple(sorted(self.closeds))

    @cached_property
    def _interior(self) -> tuple[int, ...]:
        out = []
        for M in range(1 << self.point_count):
            acc = 0
            for U in self.opens:
                if U & ~M == 0:
                    acc |= U
            out.append(acc)
        return tuple(out)

    def interior(self, M: int) -> int:
        return self._interior[M]

    def closure(self, M: int) -> int:
        return self.full ^ self._interior[self.full ^ M]

    def is_open(self, M: int) -> bool:
        return M in self.opens

    def is_closed(self, M: int) -> bool:
        return (self.full ^ M) in self.opens

    def is_regular_closed(self, M: int) -> bool:
        return self.closure(self.interior(M)) == M

    @cached_property
    def regular_closed(self) -> tuple[int, ...]:
        return tuple(sorted({self.closure(U) for U in self.opens}))

    # first-principles properties -----------------------------------------

    @cached_property
    def is_connected(self) -> bool:
        """No clopen set other than ∅ and X. The empty space counts as connected."""
        return all(U in (0, self.full) or not self.is_closed(U) for U in self.opens)

    @cached_property
    def is_regular(self) -> bool:
        """Every open nbhd U of x contains an open V ∋ x with cl(V) ⊆ U."""
        for U in self.opens:
            for x in bits(U):
                if not any(V >> x & 1 and self.closure(V) & ~U == 0 for V in self.opens):
                    return False
        return True

    @cached_property
    def is_pi_regular(self) -> bool:
        for U in self.opens:
            if U and not any(V and self.closure(V) & ~U == 0 for V in self.opens):
                return False
        return True

    @cached_property
    def is_hausdorff(self) -> bool:
        for x, y in combinations(range(self.point_count), 2):
            if not any(
                U >> x & 1 and V >> y & 1 and U & V == 0 for U in self.opens for V in self.opens
            ):
                return False
        return True

    def fmt(self, M: int) -> list[int]:
        return points_of(M)


def make_space(point_count: int, opens: Iterable[Iterable[int] | int]) -> FiniteSpace:
    """Validate a space given by its open sets (as point lists or masks)."""
    fam = set()
    for U in opens:
        if isinstance(U, int):
            fam.add(U)
        else:
            pts = list(U)
            for p in pts:
                if not isinstance(p, int) or not 0 <= p < point_count:
                    raise InputError(f"open set {pts} mentions point {p!r} outside 0..{point_count - 1}")
            fam.add(mask_of(pts))
    return FiniteSpace(point_count, frozenset(fam))


def discrete_space(n: int) -> FiniteSpace:
    return FiniteSpace(n, frozenset(range(1 << n)))


def indiscrete_space(n: int) -> FiniteSpace:
    return FiniteSpace(n, frozenset({0, (1 << n) - 1}))


def sierpinski_space() -> FiniteSpace:
    return make_space(2, [[], [0], [0, 1]])


def chain_space(n: int) -> FiniteSpace:
    """Opens are the initial segments {0..k-1}: a T0 chain topology."""
    return FiniteSpace(n, frozenset((1 << k) - 1 for k in range(n + 1)))


def all_topologies(n: int) -> list[FiniteSpace]:
    """Every topology on n labelled points, sorted by their open families."""
    full = (1 << n) - 1
    middle = [M for M in range(1 << n) if M not in (0, full)]
    out = []
    for r in range(1 << len(middle)):
        fam = {0, full} | {M for i, M in enumerate(middle) if r >> i & 1}
        if all(U | V in fam and U & V in fam for U in fam for V in fam):
            out.append(FiniteSpace(n, frozenset(fam)))
    return sorted(out, key=lambda s: s.sorted_opens)


# -- regular-closed algebras --------------------------------------------------


@dataclass(frozen=True)
class RCTable:
    """The bijection between abstract elements and regular-closed point sets.

    Atoms are the minimal nonempty regular-closed sets in lexicographic order
    of their sorted point lists; element ``a`` corresponds to the union of the
    atoms it contains.
    """

    space: FiniteSpace
    algebra: FiniteBooleanAlgebra
    atom_sets: tuple[int, ...]

    @cached_property
    def sets(self) -> tuple[int, ...]:
        out = []
        for a in self.algebra.elements():
            acc = 0
            for i in bits(a):
                acc |= self.atom_sets[i]
            out.append(acc)
        return tuple(out)

    @cached_property
    def index(self) -> dict[int, int]:
        return {F: a for a, F in enumerate(self.sets)}

    def to_set(self, a: int) -> int:
        return self.sets[self.algebra.check(a)]

    def to_element(self, F: int) -> int:
        try:
            return self.index[F]
        except KeyError:
            raise InputError(f"{points_of(F)} is not regular closed") from None


@lru_cache(maxsize=None)
def rc_algebra(space: FiniteSpace) -> tuple[ContactStructure, RCTable]:
    """RC(X) as an abstract algebra with the standard (intersection) contact."""
    rcs = [F for F in space.regular_closed if F]
    minimal = [F for F in rcs if not any(G != F and G & ~F == 0 for G in rcs)]
    minimal.sort(key=points_of)
    algebra = FiniteBooleanAlgebra(len(minimal))
    table = RCTable(space, algebra, tuple(minimal))
    _verify_rc_table(table)
    n = len(minimal)
    pairs = [(p, q) for p in range(n) for q in range(n) if minimal[p] & minimal[q]]
    ca = ContactStructure.from_atom_pairs(n, pairs)
    for a in algebra.elements():
        for b in algebra.elements():
            if ca.contacts(a, b) != bool(table.sets[a] & table.sets[b]):
                raise ConsistencyError("lifted atom contact differs from set intersection")
    return ca, table


def _verify_rc_table(table: RCTable) -> None:
    sp, alg, sets = table.space, table.algebra, table.sets
    if sorted(sets) != sorted(sp.regular_closed) or len(set(sets)) != len(sets):
        raise ConsistencyError("RC table is not a bijection onto RC(X)")
    for a in alg.elements():
        if sets[alg.complement(a)] != sp.closure(sp.full ^ sets[a]):
            raise ConsistencyError("complement does not match cl(X \\ F)")
        for b in alg.elements():
            if sets[a | b] != sets[a] | sets[b]:
                raise ConsistencyError("join does not match union")
            if sets[a & b] != sp.closure(sp.interior(sets[a] & sets[b])):
                raise ConsistencyError("meet does not match cl(int(F ∩ G))")


def standard_lca(space: FiniteSpace) -> LocalContactStructure:
    """(RC(X), ρ_X, CR(X)); every subset of a finite space is compact, so CR = RC."""
    ca, _ = rc_algebra(space)
    return LocalContactStructure(ca, ca.algebra.one)


def point_cluster(space: FiniteSpace, x: int) -> tuple[int, int]:
    """(σ_x, ν_x) as element families of the RC algebra."""
    if not isinstance(x, int) or not 0 <= x < space.point_count:
        raise InputError(f"point {x!r} out of range")
    _, table = rc_algebra(space)
    sigma = nu = 0
    for a, F in enumerate(table.sets):
        if F >> x & 1:
            sigma |= 1 << a
        if space.interior(F) >> x & 1:
            nu |= 1 << a
    return sigma, nu


# -- maps ----------------------------------------------------------------


@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    func: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.func) != self.source.point_count:
            raise InputError(
                f"map lists {len(self.func)} images for {self.source.point_count} source points"
            )
        for x, y in enumerate(self.func):
            if not isinstance(y, int) or not 0 <= y < self.target.point_count:
                raise InputError(f"point {x} maps to {y!r}, outside the target")

    def image(self, M: int) -> int:
        out = 0
        for x in bits(M):
            out |= 1 << self.func[x]
        return out

    def preimage(self, N: int) -> int:
        out = 0
        for x, y in enumerate(self.func):
            if N >> y & 1:
                out |= 1 << x
        return out

    def compose(self, after: SpaceMap) -> SpaceMap:
        """``after ∘ self``."""
        if after.source != self.target:
            raise InputError("maps are not composable")
        return SpaceMap(self.source, after.target, tuple(after.func[y] for y in self.func))

    @classmethod
    def identity(cls, space: FiniteSpace) -> SpaceMap:
        return cls(space, space, tuple(range(space.point_count)))

    def sharp(self, U: int) -> int:
        """f^#(U) = {y : f⁻¹(y) ⊆ U}."""
        return mask_of(
            y for y in range(self.target.point_count) if self.preimage(1 << y) & ~U == 0
        )


def all_maps(source: FiniteSpace, target: FiniteSpace) -> list[SpaceMap]:
    n, m = source.point_count, target.point_count
    out = []
    for code in range(m**n):
        func = []
        for _ in range(n):
            func.append(code % m)
            code //= m
        out.append(SpaceMap(source, target, tuple(func)))
    return out


def _first(it):
    return next(it, None)


def classify_map(f: SpaceMap) -> Report:
    """Exhaustive map classifier.

    Closed, open, quasi-open, irreducible and perfect maps are continuous by
    definition. ``skeletal_rc`` is only evaluated for continuous maps.
    """
    X, Y = f.source, f.target
    rep = Report()
    w = _first(V for V in Y.sorted_opens if not X.is_open(f.preimage(V)))
    continuous = w is None
    rep.set("continuous", continuous, None if w is None else points_of(w))
    w = _first(F for F in X.sorted_closeds if not Y.is_closed(f.image(F)))
    rep.set("closed", continuous and w is None, None if w is None else points_of(w))
    w = _first(U for U in X.sorted_opens if not Y.is_open(f.image(U)))
    rep.set("open", continuous and w is None, None if w is None else points_of(w))
    rep.set("compact_fibers", True)
    rep.set("perfect", rep["closed"] and rep["compact_fibers"])
    onto = f.image(X.full) == Y.full
    w = _first(F for F in X.sorted_closeds if F != X.full and f.image(F) == Y.full)
    rep.set("irreducible", continuous and onto and w is None, None if w is None else points_of(w))
    w = _first(
        F
        for F in Y.regular_closed
        if X.closure(X.interior(f.preimage(F))) != X.closure(f.preimage(Y.interior(F)))
    )
    rep.set("hj_condition", w is None, None if w is None else points_of(w))
    w = _first(
        V
        for V in Y.sorted_opens
        if X.interior(f.preimage(Y.closure(V))) & ~X.closure(f.preimage(V))
    )
    rep.set("skeletal_def", w is None, None if w is None else points_of(w))
    w = _first(U for U in X.sorted_opens if U and not Y.interior(Y.closure(f.image(U))))
    rep.set("skeletal_image", w is None, None if w is None else points_of(w))
    if continuous:
        w = _first(F for F in X.regular_closed if not Y.is_regular_closed(Y.closure(f.image(F))))
        rep.set("skeletal_rc", w is None, None if w is None else points_of(w))
    else:
        rep.set("skeletal_rc", None)
        rep.notes.append("skeletal_rc: hypothesis unmet: map not continuous")
    w = _first(U for U in X.sorted_opens if U and not Y.interior(f.image(U)))
    rep.set("quasi_open", continuous and w is None, None if w is None else points_of(w))
    rep.set("source_pi_regular", X.is_pi_regular)
    rep.set("source_connected", X.is_connected)
    return rep
