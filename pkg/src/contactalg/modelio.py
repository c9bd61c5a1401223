"""JSON model files: parsing with JSON-path diagnostics, and serialization.

Element bitsets are little-endian 0/1 strings whose width equals the atom
count (``"101"`` is atoms {0, 2}). References to other models are either a
path relative to the referring file or an inline model object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .boolean import BoolHom, FiniteBooleanAlgebra, validate_hom
from .contact import ContactStructure, LocalContactStructure
from .errors import InputError
from .topology import FiniteSpace, SpaceMap, make_space, points_of

KINDS = ("space", "contact_algebra", "lca", "hom", "e_morphism", "space_map")


class ModelError(InputError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class HomModel:
    phi: BoolHom
    source: ContactStructure | LocalContactStructure
    target: ContactStructure | LocalContactStructure


@dataclass(frozen=True)
class EMorphismModel:
    table: tuple[int, ...]
    source: ContactStructure | LocalContactStructure
    target: ContactStructure | LocalContactStructure


@dataclass(frozen=True)
class Model:
    kind: str
    name: str
    value: Any


def parse_model(path: str | Path) -> Model:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelError("$", f"invalid JSON in {path}: {exc}") from exc
    return parse_document(doc, path.parent, default_name=path.stem)


def parse_document(doc: Any, base_dir: Path = Path("."), path: str = "$", default_name: str = "") -> Model:
    obj = _obj(doc, path)
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ModelError(f"{path}.kind", f"expected one of {list(KINDS)}, got {kind!r}")
    name = obj.get("name", default_name)
    parser = {
        "space": _parse_space,
        "contact_algebra": _parse_algebra,
        "lca": _parse_algebra,
        "hom": _parse_hom,
        "e_morphism": _parse_e_morphism,
        "space_map": _parse_space_map,
    }[kind]
    return Model(kind, name, parser(obj, base_dir, path))


# -- helpers ----------------------------------------------------------------


def _obj(doc: Any, path: str) -> dict:
    if not isinstance(doc, dict):
        raise ModelError(path, "expected an object")
    return doc


def _field(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise ModelError(path, f"missing required field {key!r}")
    return obj[key]


def _int(value: Any, path: str, lo: int = 0, hi: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < lo or (hi is not None and value > hi):
        rng = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise ModelError(path, f"expected an integer {rng}, got {value!r}")
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ModelError(path, "expected an array")
    return value


def _bitset(alg: FiniteBooleanAlgebra, value: Any, path: str) -> int:
    if not isinstance(value, str) or len(value) != alg.atom_count or set(value) - {"0", "1"}:
        raise ModelError(path, f"expected a {alg.atom_count}-character 0/1 bitset, got {value!r}")
    return alg.parse(value)


def _ref(obj: dict, key: str, base_dir: Path, path: str) -> Model:
    ref = _field(obj, key, path)
    sub = f"{path}.{key}"
    if isinstance(ref, str):
        target = base_dir / ref
        try:
            doc = json.loads(target.read_text())
        except OSError as exc:
            raise ModelError(sub, f"dangling reference {ref!r}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise ModelError(sub, f"invalid JSON in {ref!r}: {exc}") from exc
        return parse_document(doc, target.parent, sub, Path(ref).stem)
    return parse_document(ref, base_dir, sub)


def _wrap(path: str, fn, *args):
    try:
        return fn(*args)
    except ModelError:
        raise
    except InputError as exc:
        raise ModelError(path, str(exc)) from exc


# -- parsers ----------------------------------------------------------------


def _parse_space(obj: dict, base_dir: Path, path: str) -> FiniteSpace:
    n = _int(_field(obj, "point_count", path), f"{path}.point_count", 0, 12)
    opens = []
    for i, U in enumerate(_list(_field(obj, "opens", path), f"{path}.opens")):
        sub = f"{path}.opens[{i}]"
        pts = [_int(p, f"{sub}[{j}]", 0, n - 1) for j, p in enumerate(_list(U, sub))]
        opens.append(pts)
    return _wrap(f"{path}.opens", make_space, n, opens)


def _parse_algebra(obj: dict, base_dir: Path, path: str) -> ContactStructure | LocalContactStructure:
    n = _int(_field(obj, "atom_count", path), f"{path}.atom_count", 0, 16)
    alg = FiniteBooleanAlgebra(n)
    contact = _obj(_field(obj, "contact", path), f"{path}.contact")
    if ("atom_matrix" in contact) == ("pairs" in contact):
        raise ModelError(f"{path}.contact", "give exactly one of 'atom_matrix' or 'pairs'")
    if "atom_matrix" in contact:
        sub = f"{path}.contact.atom_matrix"
        pairs = []
        for i, pr in enumerate(_list(contact["atom_matrix"], sub)):
            pr = _list(pr, f"{sub}[{i}]")
            if len(pr) != 2:
                raise ModelError(f"{sub}[{i}]", "expected an atom pair")
            pairs.append(tuple(_int(x, f"{sub}[{i}][{j}]", 0, n - 1) for j, x in enumerate(pr)))
        ca = _wrap(sub, ContactStructure.from_atom_pairs, n, pairs)
    else:
        sub = f"{path}.contact.pairs"
        pairs = []
        for i, pr in enumerate(_list(contact["pairs"], sub)):
            pr = _list(pr, f"{sub}[{i}]")
            if len(pr) != 2:
                raise ModelError(f"{sub}[{i}]", "expected an element pair")
            pairs.append(tuple(_bitset(alg, x, f"{sub}[{i}][{j}]") for j, x in enumerate(pr)))
        ca = _wrap(sub, ContactStructure.from_element_pairs, n, pairs)
    if "ideal_generator" in obj and "ideal" in obj:
        raise ModelError(path, "give at most one of 'ideal_generator' or 'ideal'")
    if "ideal_generator" in obj:
        gen = _bitset(alg, obj["ideal_generator"], f"{path}.ideal_generator")
        return LocalContactStructure(ca, gen)
    if "ideal" in obj:
        sub = f"{path}.ideal"
        elems = [_bitset(alg, e, f"{sub}[{i}]") for i, e in enumerate(_list(obj["ideal"], sub))]
        return _wrap(sub, LocalContactStructure.from_ideal_elements, ca, elems)
    if obj["kind"] == "lca":
        raise ModelError(path, "an lca needs 'ideal_generator' or 'ideal'")
    return ca


def _structure(model: Model, path: str) -> ContactStructure | LocalContactStructure:
    if model.kind not in ("contact_algebra", "lca"):
        raise ModelError(path, f"expected a contact_algebra or lca reference, got {model.kind}")
    return model.value


def _algebra_of(s: ContactStructure | LocalContactStructure) -> FiniteBooleanAlgebra:
    return s.algebra


def _table(obj: dict, key: str, src: FiniteBooleanAlgebra, dst: FiniteBooleanAlgebra, path: str) -> tuple[int, ...]:
    raw = _obj(obj[key], f"{path}.{key}")
    out: dict[int, int] = {}
    for k, v in raw.items():
        a = _bitset(src, k, f"{path}.{key}[{k!r}] (key)")
        out[a] = _bitset(dst, v, f"{path}.{key}[{k!r}]")
    missing = [a for a in src.elements() if a not in out]
    if missing:
        raise ModelError(f"{path}.{key}", f"table is not total: missing {src.fmt(missing[0])!r}")
    return tuple(out[a] for a in src.elements())


def _parse_hom(obj: dict, base_dir: Path, path: str) -> HomModel:
    src = _structure(_ref(obj, "source", base_dir, path), f"{path}.source")
    dst = _structure(_ref(obj, "target", base_dir, path), f"{path}.target")
    A, B = _algebra_of(src), _algebra_of(dst)
    if ("atom_map" in obj) == ("table" in obj):
        raise ModelError(path, "give exactly one of 'atom_map' or 'table'")
    if "atom_map" in obj:
        sub = f"{path}.atom_map"
        amap = _list(obj["atom_map"], sub)
        if len(amap) != B.atom_count:
            raise ModelError(sub, f"expected {B.atom_count} entries (one per target atom), got {len(amap)}")
        g = tuple(_int(p, f"{sub}[{q}]", 0, A.atom_count - 1) for q, p in enumerate(amap))
        return HomModel(BoolHom(A, B, g), src, dst)
    table = _table(obj, "table", A, B, path)
    rep = validate_hom(table, A, B)
    if not rep.all():
        raise ModelError(f"{path}.table", f"not a Boolean homomorphism: fails {rep.failing()}")
    return HomModel(_wrap(f"{path}.table", BoolHom.from_table, A, B, table), src, dst)


def _parse_e_morphism(obj: dict, base_dir: Path, path: str) -> EMorphismModel:
    src = _structure(_ref(obj, "source", base_dir, path), f"{path}.source")
    dst = _structure(_ref(obj, "target", base_dir, path), f"{path}.target")
    _field(obj, "table", path)
    return EMorphismModel(_table(obj, "table", _algebra_of(src), _algebra_of(dst), path), src, dst)


def _parse_space_map(obj: dict, base_dir: Path, path: str) -> SpaceMap:
    src = _ref(obj, "source", base_dir, path)
    dst = _ref(obj, "target", base_dir, path)
    for key, m in (("source", src), ("target", dst)):
        if m.kind != "space":
            raise ModelError(f"{path}.{key}", f"expected a space reference, got {m.kind}")
    sub = f"{path}.func"
    func = _list(_field(obj, "func", path), sub)
    n, m = src.value.point_count, dst.value.point_count
    if len(func) != n:
        raise ModelError(sub, f"expected {n} entries, got {len(func)}")
    vals = tuple(_int(y, f"{sub}[{x}]", 0, m - 1) for x, y in enumerate(func))
    return SpaceMap(src.value, dst.value, vals)


# -- serialization -------------------------------------------------------------


def dump_model(obj: Any, name: str | None = None) -> dict:
    """Inverse of parsing for spaces, algebras, local structures and maps (refs inlined)."""
    out: dict[str, Any]
    if isinstance(obj, FiniteSpace):
        out = {
            "kind": "space",
            "point_count": obj.point_count,
            "opens": [points_of(U) for U in sorted(obj.opens, key=lambda U: (bin(U).count("1"), points_of(U)))],
        }
    elif isinstance(obj, LocalContactStructure):
        out = dump_model(obj.base)
        out["kind"] = "lca"
        out["ideal_generator"] = obj.algebra.fmt(obj.ideal_generator)
    elif isinstance(obj, ContactStructure):
        alg = obj.algebra
        out = {"kind": "contact_algebra", "atom_count": alg.atom_count}
        if obj.form == "atom_matrix":
            m = obj.atom_matrix
            out["contact"] = {
                "atom_matrix": [[p, q] for p in range(alg.atom_count) for q in range(p, alg.atom_count) if m[p][q]]
            }
        else:
            out["contact"] = {
                "pairs": [[alg.fmt(a), alg.fmt(b)] for a in alg.elements() for b in alg.elements() if obj.contacts(a, b)]
            }
    elif isinstance(obj, SpaceMap):
        out = {
            "kind": "space_map",
            "source": dump_model(obj.source),
            "target": dump_model(obj.target),
            "func": list(obj.func),
        }
    elif isinstance(obj, HomModel):
        out = {
            "kind": "hom",
            "source": dump_model(obj.source),
            "target": dump_model(obj.target),
            "atom_map": list(obj.phi.atom_map),
        }
    elif isinstance(obj, EMorphismModel):
        A, B = obj.source.algebra, obj.target.algebra
        out = {
            "kind": "e_morphism",
            "source": dump_model(obj.source),
            "target": dump_model(obj.target),
            "table": {A.fmt(a): B.fmt(obj.table[a]) for a in A.elements()},
        }
    else:
        raise InputError(f"cannot serialize {type(obj).__name__}")
    if name:
        out["name"] = name
    return out
