"""The named fixture corpus used by the acceptance suites and ``fixtures emit``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .contact import ContactStructure, LocalContactStructure, adjacency_algebra, overlap_algebra
from .errors import InputError
from .modelio import dump_model, parse_model
from .topology import FiniteSpace, all_topologies, chain_space, discrete_space, indiscrete_space, sierpinski_space

GRAPH_PAIRS = tuple(combinations(range(4), 2))


def graph4(code: int) -> ContactStructure:
    """Adjacency algebra of the labelled graph on 4 vertices whose edge set is
    ``{GRAPH_PAIRS[i] : bit i of code}``."""
    return adjacency_algebra(4, [e for i, e in enumerate(GRAPH_PAIRS) if code >> i & 1])


def path3() -> ContactStructure:
    return adjacency_algebra(3, [(0, 1), (1, 2)])


def complete3() -> ContactStructure:
    return adjacency_algebra(3, [(0, 1), (0, 2), (1, 2)])


def pseudo_l() -> LocalContactStructure:
    """Overlap contact on atoms {p, q} with the ideal generated by p."""
    return LocalContactStructure(overlap_algebra(2), 0b01)


@dataclass
class Corpus:
    spaces: dict[str, FiniteSpace] = field(default_factory=dict)
    algebras: dict[str, ContactStructure] = field(default_factory=dict)
    lcas: dict[str, LocalContactStructure] = field(default_factory=dict)

    @classmethod
    def builtin(cls) -> Corpus:
        c = cls()
        for n in range(7):
            c.spaces[f"D{n}"] = discrete_space(n)
        c.spaces["S2"] = sierpinski_space()
        c.spaces["chain3"] = chain_space(3)
        c.spaces["indiscrete2"] = indiscrete_space(2)
        c.spaces["indiscrete3"] = indiscrete_space(3)
        for n in range(4):
            for i, sp in enumerate(all_topologies(n)):
                c.spaces[f"top{n}_{i:02d}"] = sp
        for n in range(5):
            c.algebras[f"overlap{n}"] = overlap_algebra(n)
        for code in range(1 << len(GRAPH_PAIRS)):
            c.algebras[f"graph4_{code:02d}"] = graph4(code)
        c.algebras["P3"] = path3()
        c.algebras["K3"] = complete3()
        for n in range(4):
            base = overlap_algebra(n)
            for g in base.algebra.elements():
                c.lcas[f"overlap{n}_ideal{base.algebra.fmt(g)}"] = LocalContactStructure(base, g)
        c.lcas["PseudoL"] = pseudo_l()
        return c

    def names(self) -> list[tuple[str, str]]:
        return (
            [("space", n) for n in self.spaces]
            + [("contact_algebra", n) for n in self.algebras]
            + [("lca", n) for n in self.lcas]
        )

    def emit(self, directory: str | Path) -> Path:
        """Write one model file per fixture plus ``manifest.json``."""
        root = Path(directory)
        root.mkdir(parents=True, exist_ok=True)
        manifest = []
        for kind, name in self.names():
            obj = {"space": self.spaces, "contact_algebra": self.algebras, "lca": self.lcas}[kind][name]
            fname = f"{name}.json"
            (root / fname).write_text(json.dumps(dump_model(obj, name), sort_keys=True, indent=1) + "\n")
            manifest.append({"name": name, "kind": kind, "file": fname})
        (root / "manifest.json").write_text(
            json.dumps({"fixtures": manifest}, sort_keys=True, indent=1) + "\n"
        )
        return root

    @classmethod
    def load(cls, directory: str | Path) -> Corpus:
        root = Path(directory)
        try:
            manifest = json.loads((root / "manifest.json").read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read corpus manifest in {root}: {exc}") from exc
        c = cls()
        for entry in manifest.get("fixtures", []):
            value = parse_model(root / entry["file"]).value
            if isinstance(value, FiniteSpace):
                c.spaces[entry["name"]] = value
            elif isinstance(value, LocalContactStructure):
                c.lcas[entry["name"]] = value
            elif isinstance(value, ContactStructure):
                c.algebras[entry["name"]] = value
            else:
                raise InputError(f"{entry['file']}: corpus entries must be spaces or algebras")
        return c

    @classmethod
    def from_spec(cls, spec: str) -> Corpus:
        return cls.builtin() if spec == "builtin" else cls.load(spec)
