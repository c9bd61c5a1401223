"""Command-line entry point: ``contactalg <command> ...``.

Exit status: 0 when every asserted check passes (checks whose hypotheses
are unmet are listed as skipped), 1 when an asserted check fails, 2 on
malformed input or unknown commands, 3 when the oracle budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .clusters import DEFAULT_BUDGET_ATOMS, clusters_via_ultrafilters, enumerate_clusters, sigma_infinity
from .contact import ContactStructure, LocalContactStructure
from .errors import BudgetError, InputError, PreconditionError
from .fixtures import Corpus
from .functors import psi_a_morphism, psi_a_object, psi_t_morphism, roundtrip, roundtrip_alg
from .modelio import EMorphismModel, HomModel, Model, parse_model
from .morphisms import classify_dual_morphism, classify_e_morphism
from .report import Report
from .suites import CRITERIA, Golden, run_all
from .topology import FiniteSpace, SpaceMap, classify_map, points_of, rc_algebra, standard_lca

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Outcome:
    """Collects a command's result and its asserted / skipped checks."""

    def __init__(self, command: str, model: Model | None = None):
        self.doc: dict[str, Any] = {"command": command}
        if model is not None:
            self.doc["kind"] = model.kind
            self.doc["name"] = model.name
        self.asserted: dict[str, str] = {}
        self.skipped: dict[str, str] = {}

    def check(self, name: str, ok: bool) -> None:
        self.asserted[name] = "pass" if ok else "fail"

    def skip(self, name: str, reason: str) -> None:
        self.skipped[name] = f"skipped: {reason}"

    def from_report(self, rep: Report, names: list[str], reason: str = "") -> None:
        for name in names:
            if rep.flags.get(name) is None:
                self.skip(name, reason or "hypothesis unmet")
            else:
                self.check(name, rep[name])

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if "fail" in self.asserted.values() else EXIT_OK

    def render(self, fmt: str) -> str:
        doc = dict(self.doc)
        doc["checks"] = {"asserted": self.asserted, "skipped": self.skipped}
        doc["exit"] = self.exit_code
        if fmt == "json":
            return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
        lines = [f"{k}: {doc[k]}" for k in ("command", "kind", "name") if k in doc]
        for name, status in sorted(self.asserted.items()):
            lines.append(f"{status.upper()} {name}")
        for name, reason in sorted(self.skipped.items()):
            lines.append(f"SKIP {name} ({reason})")
        lines.append(json.dumps(doc.get("result"), sort_keys=True, ensure_ascii=False))
        return "\n".join(lines)


# -- result builders -----------------------------------------------------------


def _space_json(sp: FiniteSpace) -> dict[str, Any]:
    return {
        "point_count": sp.point_count,
        "opens": [points_of(U) for U in sorted(sp.opens, key=lambda U: (bin(U).count("1"), points_of(U)))],
    }


def _lift_asserts(out: Outcome, rep: Report) -> None:
    for name in ("C5<=><<5", "C6<=><<6"):
        if rep["C3"]:
            out.check(name, rep[name])
        else:
            out.skip(name, "hypothesis unmet: C3 false")
    if "C6&C4=>C2" in rep:
        out.check("C6&C4=>C2", rep["C6&C4=>C2"])
    if rep["C2"] and rep["C4"]:
        out.check("atom_lift", rep["atom_lift"])
    else:
        out.skip("atom_lift", "hypothesis unmet: C2 and C4 required")


def _structure_report(s: ContactStructure | LocalContactStructure) -> Report:
    return s.report


def cmd_check(model: Model, args) -> Outcome:
    out = Outcome("check", model)
    v = model.value
    if isinstance(v, FiniteSpace):
        ca, _ = rc_algebra(v)
        out.doc["result"] = dict(
            _space_json(v),
            hausdorff=v.is_hausdorff,
            regular=v.is_regular,
            pi_regular=v.is_pi_regular,
            connected=v.is_connected,
            rc_atom_count=ca.algebra.atom_count,
        )
    elif isinstance(v, (ContactStructure, LocalContactStructure)):
        rep = _structure_report(v)
        out.doc["result"] = rep.to_json()
        _lift_asserts(out, rep)
    elif isinstance(v, HomModel):
        rep = classify_dual_morphism(v.phi, v.source, v.target)
        out.doc["result"] = rep.to_json()
        _l1_assert(out, rep, v)
    elif isinstance(v, EMorphismModel):
        out.doc["result"] = classify_e_morphism(v.table, v.source, v.target).to_json()
    elif isinstance(v, SpaceMap):
        _map_asserts(out, v)
    return out


def _l1_assert(out: Outcome, rep: Report, v: HomModel) -> None:
    c4 = all(s.base.report["C3"] and s.base.report["C4"] for s in map(_local, (v.source, v.target)))
    if c4:
        out.check("L1<=>EL1", rep["L1<=>EL1"])
    else:
        out.skip("L1<=>EL1", "hypothesis unmet: C3 and C4 required on both sides")


def _local(s):
    return s if isinstance(s, LocalContactStructure) else LocalContactStructure.compact(s)


def _map_asserts(out: Outcome, f: SpaceMap) -> None:
    rep = classify_map(f)
    out.doc["result"] = rep.to_json()
    if rep["continuous"]:
        out.check("skeletal_criteria_agree", rep["skeletal_def"] == rep["skeletal_image"] == rep["skeletal_rc"])
    else:
        out.skip("skeletal_criteria_agree", "hypothesis unmet: map not continuous")
    out.check("quasi_open=>skeletal", not rep["quasi_open"] or bool(rep["skeletal_def"]))


def cmd_dual(model: Model, args) -> Outcome:
    out = Outcome("dual", model)
    v = model.value
    if isinstance(v, FiniteSpace):
        lca = standard_lca(v)
        ca, table = rc_algebra(v)
        alg = ca.algebra
        m = ca.atom_matrix
        out.doc["result"] = {
            "atom_count": alg.atom_count,
            "element_count": alg.size,
            "elements": {alg.fmt(a): points_of(F) for a, F in enumerate(table.sets)},
            "contact": {
                "atom_matrix": [[p, q] for p in range(alg.atom_count) for q in range(p, alg.atom_count) if m[p][q]]
            },
            "ideal_generator": alg.fmt(lca.ideal_generator),
            "ideal_is_whole": lca.whole,
            "axioms": ca.report.to_json()["flags"],
        }
    elif isinstance(v, (ContactStructure, LocalContactStructure)):
        d = psi_a_object(v, args.budget_atoms)
        alg = v.algebra
        res = {
            "space": _space_json(d.space),
            "points": [alg.fmt_family(s) for s in d.points],
            "lambda_table": {alg.fmt(a): points_of(d.lam(a)) for a in alg.elements()},
            "report": d.report.to_json(),
        }
        if d.sigma_infinity is not None:
            res["sigma_infinity"] = {
                "members": alg.fmt_family(d.sigma_infinity.members),
                "is_cluster": d.sigma_infinity.is_cluster,
            }
        out.doc["result"] = res
        if d.report["extension_normal"]:
            out.from_report(d.report, ["lambda_regular_closed", "complement_identity"])
        else:
            for name in ("lambda_regular_closed", "complement_identity"):
                out.skip(name, "hypothesis unmet: extension not normal")
    elif isinstance(v, SpaceMap):
        try:
            phi = psi_t_morphism(v)
        except PreconditionError as exc:
            out.doc["result"] = None
            out.skip("psi_t", f"hypothesis unmet: {exc.flag} ({exc})")
            return out
        A, B = phi.source, phi.target
        out.doc["result"] = {"table": {A.fmt(a): B.fmt(phi(a)) for a in A.elements()}, "atom_map": list(phi.atom_map)}
    elif isinstance(v, HomModel):
        try:
            f = psi_a_morphism(v.phi, v.source, v.target, args.budget_atoms)
        except PreconditionError as exc:
            out.doc["result"] = None
            out.skip("psi_a", f"hypothesis unmet: {exc.flag} ({exc})")
            return out
        out.doc["result"] = {"source": _space_json(f.source), "target": _space_json(f.target), "func": list(f.func)}
    else:
        raise InputError(f"dual is not defined for kind {model.kind}")
    return out


def cmd_clusters(model: Model, args) -> Outcome:
    out = Outcome("clusters", model)
    v = model.value
    if not isinstance(v, (ContactStructure, LocalContactStructure)):
        raise InputError(f"clusters needs a contact_algebra or lca, got {model.kind}")
    lca = _local(v)
    ca = lca.extension
    alg = ca.algebra
    found = enumerate_clusters(ca, args.budget_atoms)
    cands = clusters_via_ultrafilters(ca)
    res: dict[str, Any] = {
        "normal": ca.is_normal,
        "clusters": [alg.fmt_family(s) for s in found],
        "ultrafilter_route": [{"members": alg.fmt_family(c.members), "is_cluster": c.is_cluster} for c in cands],
    }
    if not lca.whole:
        inf = sigma_infinity(lca)
        res["sigma_infinity"] = {"members": alg.fmt_family(inf.members), "is_cluster": inf.is_cluster}
        res["bounded_clusters"] = [alg.fmt_family(s) for s in found if s & lca.ideal_family]
    out.doc["result"] = res
    if ca.is_normal:
        out.check("routes_agree", [c.members for c in cands] == found)
    else:
        out.skip("routes_agree", "hypothesis unmet: C5/C6 false")
    if args.golden_dir:
        path = Path(args.golden_dir) / f"{model.name}.clusters.json"
        text = json.dumps(res["clusters"], sort_keys=True, indent=1) + "\n"
        if args.update_golden:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        out.check("golden", path.exists() and json.loads(path.read_text()) == res["clusters"])
    return out


def cmd_classify(model: Model, args) -> Outcome:
    out = Outcome("classify", model)
    v = model.value
    if isinstance(v, SpaceMap):
        _map_asserts(out, v)
    elif isinstance(v, HomModel):
        rep = classify_dual_morphism(v.phi, v.source, v.target)
        out.doc["result"] = rep.to_json()
        _l1_assert(out, rep, v)
    elif isinstance(v, EMorphismModel):
        out.doc["result"] = classify_e_morphism(v.table, v.source, v.target).to_json()
    else:
        raise InputError(f"classify needs a space_map, hom or e_morphism, got {model.kind}")
    return out


def cmd_roundtrip(model: Model, args) -> Outcome:
    out = Outcome("roundtrip", model)
    v = model.value
    if isinstance(v, FiniteSpace):
        rep = roundtrip(v, args.budget_atoms)
        names = ["homeomorphism"]
    elif isinstance(v, (ContactStructure, LocalContactStructure)):
        rep = roundtrip_alg(v, args.budget_atoms)
        names = ["ca_isomorphism", "III_ideal"]
    else:
        raise InputError(f"roundtrip needs a space, contact_algebra or lca, got {model.kind}")
    out.doc["result"] = rep.to_json()
    asserted = rep.info["asserted"]
    for name in names:
        if name in asserted:
            out.check(name, rep[name])
        else:
            out.skip(name, "; ".join(n for n in rep.notes if n.startswith("hypothesis unmet")) or "hypothesis unmet")
    return out


def cmd_sweep(args) -> Outcome:
    out = Outcome("sweep")
    corpus = Corpus.from_spec(args.corpus)
    golden = Golden(Path(args.golden_dir) if args.golden_dir else None, args.update_golden)
    only = [int(x) for x in args.only.split(",")] if args.only else None
    if only and any(n not in CRITERIA for n in only):
        raise InputError(f"--only takes criterion numbers from {sorted(CRITERIA)}")
    results = run_all(corpus, golden, only)
    out.doc["corpus"] = args.corpus
    out.doc["result"] = [r.to_json() for r in results]
    for r in results:
        out.check(f"criterion_{r.number}", r.passed)
    return out


def cmd_fixtures(args) -> Outcome:
    out = Outcome("fixtures emit")
    root = Corpus.builtin().emit(args.dir)
    manifest = json.loads((root / "manifest.json").read_text())
    out.doc["result"] = {"directory": str(root), "fixtures": len(manifest["fixtures"])}
    return out


MODEL_COMMANDS = {
    "check": cmd_check,
    "dual": cmd_dual,
    "clusters": cmd_clusters,
    "classify": cmd_classify,
    "roundtrip": cmd_roundtrip,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-atoms", type=int, default=DEFAULT_BUDGET_ATOMS, metavar="N",
                        help="largest atom count for brute-force subset scans (default 4)")
    common.add_argument("--golden-dir", metavar="PATH", help="directory of golden files to compare against")
    common.add_argument("--update-golden", action="store_true", help="(re)write golden files instead of failing")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="contactalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in MODEL_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("model", help="path to a JSON model file")
    p = sub.add_parser("sweep", parents=[common], help="run the acceptance suites over a corpus")
    p.add_argument("corpus", help="'builtin' or a directory written by 'fixtures emit'")
    p.add_argument("--only", metavar="N,M", help="comma-separated criterion numbers")
    p = sub.add_parser("fixtures", parents=[common], help="fixture corpus tools")
    p.add_argument("action", choices=("emit",))
    p.add_argument("dir")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "sweep":
            out = cmd_sweep(args)
        elif args.command == "fixtures":
            out = cmd_fixtures(args)
        else:
            out = MODEL_COMMANDS[args.command](parse_model(args.model), args)
    except BudgetError as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out.render(args.format))
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
