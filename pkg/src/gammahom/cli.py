"""Batch front end: problem files in, deterministic JSON or text reports out."""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import __version__
from . import bar_homology as bh
from . import crossed as cx
from . import cyclic_rational as cr
from . import extensions as ex
from . import free_groups as fg
from . import hochschild as hh
from .bar_homology import BudgetExceeded
from .equivariant_modules import ModuleValidationError, module_from_spec
from .finite_group import GroupAxiomError, gamma_group_from_spec, group_from_spec, power_action

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4
EXIT_MISMATCH = 5

DEFAULT_DEGREE_MAX = 3
DEFAULT_BUDGET_GENERATORS = bh.DEFAULT_COLUMN_BUDGET
DEFAULT_BUDGET_WORD_LENGTH = 12
DEFAULT_BUDGET_CANDIDATES = 2_000_000


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvariantFailure(RuntimeError):
    pass


@dataclass
class ProblemSpec:
    command: str
    data: dict
    degree_max: int = DEFAULT_DEGREE_MAX
    budget_generators: int = DEFAULT_BUDGET_GENERATORS
    budget_word_length: int = DEFAULT_BUDGET_WORD_LENGTH
    budget_candidates: int = DEFAULT_BUDGET_CANDIDATES
    seed: int = 0
    objects: dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    task: dict
    claims: list[str]
    results: dict
    verdicts: dict
    exit_code: int = EXIT_OK
    seconds: float = 0.0

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "version": __version__,
            "command": self.command,
            "task": self.task,
            "claims": self.claims,
            "results": self.results,
            "verdicts": self.verdicts,
            "exit_code": self.exit_code,
        }
        if timing:
            out["timing_seconds"] = round(self.seconds, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), sort_keys=True, indent=2)

    def to_text(self, timing: bool = True) -> str:
        lines: list[str] = []
        _flatten(self.as_dict(timing), "", lines)
        return "\n".join(lines)


def _flatten(obj: Any, prefix: str, lines: list[str]) -> None:
    if isinstance(obj, dict) and obj:
        for k in sorted(obj, key=str):
            _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k), lines)
    elif isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}[{i}]", lines)
    else:
        lines.append(f"{prefix}: {json.dumps(obj, sort_keys=True)}")


# ---------------------------------------------------------------- parsing


def _require(data: dict, key: str, path: str = "$") -> Any:
    if key not in data:
        raise InputError(f"{path}.{key}", "required field is missing")
    return data[key]


def _build(path: str, fn: Callable, *args):
    try:
        return fn(*args)
    except InputError:
        raise
    except (GroupAxiomError, ModuleValidationError, hh.AlgebraError, cx.CrossedModuleError, ex.ExtensionError) as exc:
        raise InputError(path, f"validation failed: {exc}") from exc
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise InputError(path, f"malformed: {exc}") from exc


def _gamma_group(data: dict, path: str = "$"):
    _require(data, "group", path)
    return _build(f"{path}.group", gamma_group_from_spec, data["group"], data.get("gamma"), data.get("action"))


def _module(gg, data: dict, path: str = "$"):
    return _build(f"{path}.module", module_from_spec, gg, data.get("module", "Z"))


REQUIRED = {
    "group-homology": ["group"],
    "group-cohomology": ["group"],
    "rational-cyclic": ["m"],
    "extensions-enumerate": ["group", "module"],
    "extensions-obstruction": ["group", "kernel_group"],
    "hochschild": ["algebra"],
    "cyclic": ["algebra"],
    "morita-check": ["algebra"],
    "case2-crosscheck": ["group"],
    "freegroup-schreier": ["rank", "target", "images"],
    "crossed-validate": ["crossed_module"],
    "crossed-pullback": ["extension", "new_base", "map"],
    "crossed-pushforward": ["extension", "new_kernel", "map"],
    "self-test": [],
}


def parse_problem(data: Any, command: str | None = None) -> ProblemSpec:
    """Validate a decoded problem file; errors carry a JSON path."""
    if not isinstance(data, dict):
        raise InputError("$", "problem must be a JSON object")
    cmd = command or data.get("command")
    if cmd is None:
        raise InputError("$.command", "required field is missing")
    if cmd not in REQUIRED:
        raise InputError("$.command", f"unknown command {cmd!r}")
    if data.get("command") not in (None, cmd):
        raise InputError("$.command", f"file is for {data['command']!r}, not {cmd!r}")
    for key in REQUIRED[cmd]:
        _require(data, key)
    spec = ProblemSpec(cmd, data)
    for key in ("degree_max", "budget_generators", "budget_word_length", "budget_candidates", "seed"):
        if key in data:
            if not isinstance(data[key], int) or data[key] < 0:
                raise InputError(f"$.{key}", "expected a non-negative integer")
            setattr(spec, key, data[key])
    # build and validate every referenced object up front
    o = spec.objects
    if cmd in ("group-homology", "group-cohomology", "extensions-enumerate"):
        o["gg"] = _gamma_group(data)
        o["module"] = _module(o["gg"], data)
    elif cmd == "case2-crosscheck":
        o["gg"] = _gamma_group(data)
    elif cmd == "rational-cyclic":
        m, k = data["m"], data.get("k", 1)
        if not isinstance(m, int) or m < 1:
            raise InputError("$.m", "expected a positive integer")
        o["gg"] = _build("$.k", power_action, m, k)
        mod = data.get("module", "Z")
        o["module"] = _build("$.module", cr.cyclic_module, m, k, mod) if mod in ("trivial", "regular") else _module(o["gg"], data)
    elif cmd == "extensions-obstruction":
        o["gg"] = _gamma_group(data)
        o["kernel_group"] = _build("$.kernel_group", group_from_spec, data["kernel_group"])
        if "outer_action" in data:
            ak = _build("$.outer_action", ex.AbstractKernel, o["gg"], o["kernel_group"], data["outer_action"])
            bad = ak.violations()
            if bad:
                raise InputError("$.outer_action", "validation failed: " + "; ".join(bad[:3]))
            o["kernels"] = [ak]
        else:
            o["kernels"] = _build("$.kernel_group", ex.abstract_kernels, o["gg"], o["kernel_group"])
    elif cmd in ("hochschild", "cyclic", "morita-check"):
        o["algebra"], o["action"] = _build("$.algebra", hh.algebra_from_spec, data["algebra"])
    elif cmd == "freegroup-schreier":
        o["target"] = _build("$.target", group_from_spec, data["target"])
        rank, images = data["rank"], data["images"]
        if not isinstance(rank, int) or rank < 1:
            raise InputError("$.rank", "expected a positive integer")
        if not isinstance(images, list) or len(images) != rank:
            raise InputError("$.images", f"expected {rank} target elements")
        for i, x in enumerate(images):
            if not isinstance(x, int) or not 0 <= x < o["target"].order:
                raise InputError(f"$.images[{i}]", "not an element of the target")
        if "basis_action" in data:
            ba = data["basis_action"]
            act = _build("$.basis_action", lambda: fg.BasisAction(rank, group_from_spec(_require(ba, "gamma", "$.basis_action")), _require(ba, "perms", "$.basis_action")))
            bad = act.violations()
            if bad:
                raise InputError("$.basis_action", "validation failed: " + "; ".join(bad[:3]))
            o["basis_action"] = act
    elif cmd == "crossed-validate":
        o["crossed_module"] = _build("$.crossed_module", cx.crossed_module_from_spec, data["crossed_module"])
    elif cmd == "crossed-pullback":
        o["extension"] = _checked_extension(data["extension"])
        o["new_base"] = _build("$.new_base", cx.crossed_module_from_spec, data["new_base"])
    elif cmd == "crossed-pushforward":
        o["extension"] = _checked_extension(data["extension"])
        o["new_kernel"] = _build("$.new_kernel", cx.crossed_module_from_spec, data["new_kernel"])
    return spec


def _checked_extension(data: dict):
    ext = _build("$.extension", cx.extension_from_spec, data)
    bad = ext.violations()
    if bad:
        raise InputError("$.extension", "validation failed: " + "; ".join(bad[:3]))
    return ext


# ---------------------------------------------------------------- commands


def _inv_list(xs) -> list[dict]:
    return [x.as_dict() for x in xs]


def _group_homology(spec: ProblemSpec) -> Report:
    gg, mod, n = spec.objects["gg"], spec.objects["module"], spec.degree_max
    bar = bh.build_bar_complex(gg, mod, n + 1, spec.budget_generators)
    if not bar.d_squared_zero():
        raise InvariantFailure("bar boundary does not square to zero")
    hom = [bar.homology(i) for i in range(n + 1)]
    results: dict = {"homology": [{"degree": i, **h.as_dict()} for i, h in enumerate(hom)]}
    verdicts = {}
    if n >= 1:
        formula = bh.h1_via_formula(gg, mod)
        results["H1_formula"] = formula.as_dict()
        verdicts["H1_matches_formula"] = formula == hom[1]
    return Report(spec.command, {}, ["H_1 equals the Gamma-abelianization of G tensored with A"], results, verdicts)


def _group_cohomology(spec: ProblemSpec) -> Report:
    gg, mod, n = spec.objects["gg"], spec.objects["module"], spec.degree_max
    cc = bh.build_cochain_complex(gg, mod, n + 1, spec.budget_generators)
    if not cc.complex.check_d_squared():
        raise InvariantFailure("cochain coboundary does not square to zero")
    coh = [cc.cohomology(i) for i in range(n + 1)]
    return Report(spec.command, {}, ["equivariant cochains compute H^n_Gamma(G, A)"],
                  {"cohomology": [{"degree": i, **h.as_dict()} for i, h in enumerate(coh)]}, {})


def _rational_cyclic(spec: ProblemSpec) -> Report:
    mod, n = spec.objects["module"], spec.degree_max
    m, k = spec.data["m"], spec.data.get("k", 1)
    hom = [cr.rational_homology(mod, i) for i in range(n + 1)]
    coh = [cr.rational_cohomology(mod, i) for i in range(n + 1)]
    check = cr.crosscheck_vs_rational_bar(mod, n, k, n)
    h0f, c0f = cr.h0_formula_dimension(mod), cr.cohomology_h0_formula_dimension(mod)
    verdicts = {
        "bar_crosscheck": check.match,
        "periodic": cr.periodicity_holds(hom) and cr.periodicity_holds(coh),
        "H0_matches_closed_form": hom[0] == h0f,
        "H^0_matches_closed_form": coh[0] == c0f,
    }
    results = {
        "m": m,
        "k": k,
        "homology_dimensions": hom,
        "cohomology_dimensions": coh,
        "H0_closed_form": h0f,
        "H^0_closed_form": c0f,
        "bar": check.as_dict(),
    }
    claims = [
        "the periodic resolution computes rational equivariant (co)homology",
        "degree 0 equals Q tensor A_Gamma (homology) and Hom(Q, A^Gamma) (cohomology)",
        "positive degrees are 2-periodic",
    ]
    rep = Report(spec.command, {}, claims, results, verdicts)
    if not all(verdicts.values()):
        rep.exit_code = EXIT_MISMATCH
    return rep


def _extensions_enumerate(spec: ProblemSpec) -> Report:
    rep, reps = ex.enumerate_E1Gamma(spec.objects["gg"], spec.objects["module"])
    tables = [ex.extension_from_factor_set(fs).total.group.table for fs in reps]
    out = Report(spec.command, {}, ["equivalence classes of equivariant extensions biject with H^2_Gamma"],
                 {**rep.as_dict(), "representatives": tables}, {"count_matches_H2": rep.match})
    if not rep.match:
        out.exit_code = EXIT_MISMATCH
    return out


def _extensions_obstruction(spec: ProblemSpec) -> Report:
    rows = []
    agree = True
    for ak in spec.objects["kernels"]:
        obs = ex.obstruction(ak, with_h3=True)
        verdict = ex.obstruction_vanishes_iff_extension_exists(ak, spec.budget_candidates)
        if verdict.extension_exists is None:
            raise BudgetExceeded("brute-force extension search did not finish")
        agree &= verdict.agree
        rows.append({"outer_action": ak.psi, **obs.as_dict(), "extension_exists": verdict.extension_exists, "search_nodes": verdict.nodes})
    out = Report(spec.command, {}, ["the obstruction class vanishes exactly when an extension realizing the outer action exists"],
                 {"abstract_kernels": rows}, {"obstruction_matches_existence": agree})
    if not agree:
        out.exit_code = EXIT_MISMATCH
    return out


def _hochschild(spec: ProblemSpec) -> Report:
    alg, act, n = spec.objects["algebra"], spec.objects["action"], spec.degree_max
    hc = hh.build_hochschild_complex(alg, hh.regular_bimodule(alg, act), act, n + 1, spec.budget_generators)
    ga = hc.with_gamma()
    if not ga.d_squared_zero() or not ga.strictly_equivariant():
        raise InvariantFailure("Hochschild boundary is not an equivariant differential")
    homs = ga.coinvariants()
    values = [homs.homology(i) for i in range(n + 1)]
    values = [v if isinstance(v, int) else v.as_dict() for v in values]
    h0f, _ = hh.hh0_formula(alg, act)
    results: dict = {"base": alg.base, "homology": values, "HH0_formula": h0f}
    verdicts: dict = {"HH0_matches_formula": (values[0] == h0f) if alg.base == "Q" else None}
    claims = ["HH_0 equals A modulo Gamma-additive commutators"]
    if alg.is_commutative() and alg.base == "Q" and n >= 1:
        om, _ = hh.kahler_omega1_gamma(alg, act)
        results["kahler_omega1_gamma"] = om
        verdicts["HH1_matches_kahler"] = values[1] == om
        claims.append("HH_1 equals Gamma-coinvariant Kahler differentials for commutative A")
    out = Report(spec.command, {}, claims, results, verdicts)
    if any(v is False for v in verdicts.values()):
        out.exit_code = EXIT_MISMATCH
    return out


def _cyclic(spec: ProblemSpec) -> Report:
    alg, act, n = spec.objects["algebra"], spec.objects["action"], spec.degree_max
    hc = hh.build_hochschild_complex(alg, hh.regular_bimodule(alg, act), act, n + 1, spec.budget_generators)
    witness = hc.with_cyclic().weak_condition_witness("solve")
    if witness is not None:
        raise InvariantFailure(f"cyclic action fails the weak condition: {witness}")
    dims = hh.connes_homology(alg, n, act, spec.budget_generators)
    return Report(spec.command, {}, ["the cyclic operator satisfies the weak compatibility condition", "coinvariants compute cyclic homology over Q"],
                  {"cyclic_homology_dimensions": dims}, {"weak_condition": True})


def _morita(spec: ProblemSpec) -> Report:
    r = int(spec.data.get("r", 2))
    rep = hh.morita_check(spec.objects["algebra"], spec.objects["action"], r, spec.degree_max)
    out = Report(spec.command, {}, ["trace and inclusion induce inverse isomorphisms between HH of A and of M_r(A)"], rep.as_dict(), {"ok": rep.ok})
    if not rep.ok:
        out.exit_code = EXIT_MISMATCH
    return out


def _case2(spec: ProblemSpec) -> Report:
    rep = hh.case2_crosscheck(spec.objects["gg"], spec.degree_max, bool(spec.data.get("include_regular", False)), spec.budget_generators)
    out = Report(spec.command, {}, ["Hochschild homology of Z(G) with trivial coefficients equals H_n^Gamma(G)"], rep.as_dict(), {"match": rep.match})
    if not rep.match:
        out.exit_code = EXIT_MISMATCH
    return out


def _schreier(spec: ProblemSpec) -> Report:
    d = spec.data
    data = fg.schreier_kernel(d["rank"], spec.objects["target"], d["images"])
    results: dict = {"kernel": data.as_dict()}
    verdicts: dict = {"rank_formula": data.rank == data.schreier_formula()}
    act = spec.objects.get("basis_action")
    if act is not None:
        maxlen = min(spec.budget_word_length, int(d.get("max_word_length", spec.budget_word_length)))
        found = fg.find_stable_generating_set(act, data)
        search = fg.fixed_word_search(act, maxlen, spec.budget_candidates)
        results["fixed_word_search"] = search.as_dict()
        results["stable_basis"] = [w.to_str() for w in found] if found else None
        if found:
            results["stable_basis_verdict"] = fg.gamma_stable_basis_check(found, act, data).as_dict()
        verdicts["stable_basis_found"] = found is not None
    return Report(spec.command, {}, ["rank of a finite-index subgroup is (F:G)(rank F - 1) + 1"], results, verdicts)


def _crossed_validate(spec: ProblemSpec) -> Report:
    cm = spec.objects["crossed_module"]
    bad = cm.violations()
    out = Report(spec.command, {}, ["Peiffer identity, equivariance of mu and compatibility with Gamma"],
                 {"violations": bad, "image_of_mu": sorted(cm.image_of_mu())},
                 {"crossed_gamma_module": not bad, "gamma_perfect": cx.is_gamma_perfect_crossed(cm) if not bad else None})
    if bad:
        out.exit_code = EXIT_INVARIANT
    return out


def _ext_dict(e) -> dict:
    return {**e.as_dict(), "middle_table": e.middle.group.table}


def _crossed_pullback(spec: ProblemSpec) -> Report:
    ext = spec.objects["extension"]
    new = _build("$.map", cx.pullback_extension, ext, spec.objects["new_base"], spec.data["map"])
    return Report(spec.command, {}, ["the fiber product is an extension of the new base"], {"extension": _ext_dict(new)}, {"valid": not new.violations()})


def _crossed_pushforward(spec: ProblemSpec) -> Report:
    ext = spec.objects["extension"]
    new = _build("$.map", cx.pushforward_extension, ext, spec.objects["new_kernel"], spec.data["map"])
    return Report(spec.command, {}, ["the pushout is an extension by the new kernel"], {"extension": _ext_dict(new)}, {"valid": not new.violations()})


def _self_test(spec: ProblemSpec) -> Report:
    from .acceptance import run_all

    only = spec.data.get("only")
    results = run_all(only, echo=spec.data.get("echo", False), stream=sys.stderr)
    verdicts = {f"{r.number:02d}": r.passed for r in results}
    out = Report(spec.command, {}, ["acceptance criteria"], {"criteria": [{"criterion": r.number, "title": r.title, "passed": r.passed} for r in results]}, verdicts)
    if not all(verdicts.values()):
        out.exit_code = EXIT_MISMATCH
    return out


HANDLERS: dict[str, Callable[[ProblemSpec], Report]] = {
    "group-homology": _group_homology,
    "group-cohomology": _group_cohomology,
    "rational-cyclic": _rational_cyclic,
    "extensions-enumerate": _extensions_enumerate,
    "extensions-obstruction": _extensions_obstruction,
    "hochschild": _hochschild,
    "cyclic": _cyclic,
    "morita-check": _morita,
    "case2-crosscheck": _case2,
    "freegroup-schreier": _schreier,
    "crossed-validate": _crossed_validate,
    "crossed-pullback": _crossed_pullback,
    "crossed-pushforward": _crossed_pushforward,
    "self-test": _self_test,
}


def run(spec: ProblemSpec) -> Report:
    t = time.perf_counter()
    try:
        rep = HANDLERS[spec.command](spec)
    except BudgetExceeded as exc:
        rep = Report(spec.command, {}, [], {"error": str(exc)}, {}, EXIT_BUDGET)
    except (InvariantFailure, hh.WeakConditionViolation) as exc:
        rep = Report(spec.command, {}, [], {"error": str(exc)}, {}, EXIT_INVARIANT)
    rep.task = {k: v for k, v in sorted(spec.data.items())}
    rep.task.update(command=spec.command, degree_max=spec.degree_max, budget_generators=spec.budget_generators, seed=spec.seed)
    rep.seconds = time.perf_counter() - t
    return rep


# ---------------------------------------------------------------- argv


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="problem file (JSON)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--degree-max", type=int)
    p.add_argument("--budget-generators", type=int)
    p.add_argument("--budget-word-length", type=int)
    p.add_argument("--budget-candidates", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--no-timing", action="store_true", help="omit the timing field for byte-identical reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gammahom", description="Gamma-equivariant homological algebra at desk scale")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("group-homology", "group-cohomology", "hochschild", "cyclic", "morita-check", "case2-crosscheck"):
        _common(sub.add_parser(name))
    rc = sub.add_parser("rational-cyclic")
    _common(rc)
    rc.add_argument("--m", type=int)
    rc.add_argument("--action", help="k=<unit mod m>: Gamma generated by t -> t^k")
    rc.add_argument("--module", choices=["trivial", "regular"])
    exts = sub.add_parser("extensions").add_subparsers(dest="action_name", required=True)
    for name in ("enumerate", "obstruction"):
        _common(exts.add_parser(name))
    fgp = sub.add_parser("freegroup").add_subparsers(dest="action_name", required=True)
    sch = fgp.add_parser("schreier")
    _common(sch)
    sch.add_argument("--rank", type=int)
    sch.add_argument("--target", help="group spec as JSON, e.g. '{\"cyclic\": 2}'")
    sch.add_argument("--images", help="comma-separated target elements")
    crs = sub.add_parser("crossed").add_subparsers(dest="action_name", required=True)
    for name in ("validate", "pullback", "pushforward"):
        _common(crs.add_parser(name))
    st = sub.add_parser("self-test")
    _common(st)
    st.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def _problem_from_args(args) -> tuple[dict, str]:
    command = args.command
    if getattr(args, "action_name", None):
        command = f"{command}-{args.action_name}"
    data: dict = {}
    if args.input:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError("--input", str(exc)) from exc
        except json.JSONDecodeError as exc:
            raise InputError("--input", f"not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InputError("$", "problem must be a JSON object")
    if command == "rational-cyclic":
        if args.m is not None:
            data["m"] = args.m
        if args.action:
            key, _, val = args.action.partition("=")
            if key != "k" or not val.lstrip("-").isdigit():
                raise InputError("--action", "expected k=<integer>")
            data["k"] = int(val)
        if args.module:
            data["module"] = args.module
    if command == "freegroup-schreier":
        if args.rank is not None:
            data["rank"] = args.rank
        if args.target:
            try:
                data["target"] = json.loads(args.target)
            except json.JSONDecodeError as exc:
                raise InputError("--target", f"not valid JSON: {exc}") from exc
        if args.images:
            try:
                data["images"] = [int(x) for x in args.images.split(",")]
            except ValueError as exc:
                raise InputError("--images", str(exc)) from exc
    if command == "self-test" and args.only:
        data["only"] = [int(x) for x in args.only.split(",")]
        data["echo"] = True
    elif command == "self-test":
        data["echo"] = True
    flags = {
        "degree_max": args.degree_max,
        "budget_generators": args.budget_generators,
        "budget_word_length": args.budget_word_length,
        "budget_candidates": args.budget_candidates,
        "seed": args.seed,
    }
    data.update({k: v for k, v in flags.items() if v is not None})
    return data, command


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data, command = _problem_from_args(args)
        spec = parse_problem(data, command)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep = run(spec)
    text = rep.to_text(not args.no_timing) if args.format == "text" else rep.to_json(not args.no_timing)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
