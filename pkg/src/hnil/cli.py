"""Command-line surface: file commands, report serialization, random sweeps.

Exit codes: 0 success (and inequality holds), 1 parse or validation failure,
2 usage error, 3 inequality violated (an internal-defect signal).  Styled
output is disabled when stdout is not a terminal or HNIL_COLOR=0.
"""

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import linalg
from .algebra import AlgebraSignature, GeneratorSymbol, format_element, from_coordinates, degree_basis
from .bundle import BundleModel, compute_N_lin, characteristic_classes, normalize_generators, validate_bundle
from .catalog import CATALOG, builtin_example, example_names
from .cdga import CDGA, cohomology_basis, differential_matrix
from .errors import HnilError, ParseError, UnknownExampleError
from .parser import format_model, parse_model
from .report import NOTE, TheoremReport, check_theorem


def emit_report(r: TheoremReport, model: BundleModel | None = None, fmt: str = "human") -> str:
    """Serialize a report; json key order is part of the interface."""
    witnesses = []
    for s in r.witnesses:
        new_gen = s.correction.signature.gen(s.target) - s.correction
        witnesses.append(
            {
                "target": s.target,
                "correction": format_element(s.correction),
                "new_generator": format_element(new_gen),
            }
        )
    if fmt == "json":
        payload = {
            "n": r.n,
            "n_lin": r.n_lin,
            "hnil": r.hnil,
            "lower_bound": r.lower_bound,
            "upper_bound": r.upper_bound,
            "holds": r.holds,
            "homology": [{"degree": p, "dim": d} for p, d in r.homology_dims],
            "witnesses": witnesses,
            "note": NOTE,
        }
        return json.dumps(payload, indent=2)
    lines = [
        f"n (distinct fiber degrees): {r.n}",
        f"n_lin (injective degrees) : {r.n_lin}",
        f"hnil                      : {r.hnil}",
        f"bounds: {r.lower_bound} <= hnil <= {r.upper_bound}",
        "n - N(p) <= Hnil <= n : " + _styled("OK" if r.holds else "VIOLATED", r.holds),
    ]
    if r.homology_dims:
        dims = ", ".join(f"p={p} dim {d}" for p, d in r.homology_dims)
        lines.append(f"homology: {dims}")
    else:
        lines.append("homology: trivial")
    for w in witnesses:
        lines.append(f"witness: {w['target']}' = {w['new_generator']}")
    lines.append(f"note: {NOTE}")
    return "\n".join(lines)


def _styled(text: str, ok: bool) -> str:
    if os.environ.get("HNIL_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    code = "32" if ok else "31"
    return f"\x1b[{code}m{text}\x1b[0m"


# ---------------------------------------------------------------------------
# Random model sweep.
#
# Bases are fixed templates; fiber degree multisets are drawn from families
# where the inequality provably holds, and the differentials are random
# small-coefficient combinations of base cocycles of the matching degree, so
# every generated model is valid by construction.
# ---------------------------------------------------------------------------

_FIBER_TEMPLATES: tuple[tuple[int, ...], ...] = (
    (1,),
    (3,),
    (5,),
    (7,),
    (1, 1),
    (3, 3),
    (1, 3),
    (1, 5),
    (1, 7),
    (3, 5),
    (3, 7),
    (5, 7),
    (3, 5, 7),
    (3, 3, 5),
    (1, 3, 3),
)


def _base_template(kind: str, T: int) -> CDGA:
    if kind == "even2":
        sig = AlgebraSignature((GeneratorSymbol("e", 2, "base"),), truncation=T)
        return CDGA(sig, {})
    if kind == "even4":
        sig = AlgebraSignature((GeneratorSymbol("u", 4, "base"),), truncation=T)
        return CDGA(sig, {})
    if kind == "even22":
        sig = AlgebraSignature(
            (GeneratorSymbol("e1", 2, "base"), GeneratorSymbol("e2", 2, "base")),
            truncation=T,
        )
        return CDGA(sig, {})
    if kind == "odd3":
        sig = AlgebraSignature((GeneratorSymbol("b", 3, "base"),), truncation=T)
        return CDGA(sig, {})
    if kind == "cp3":
        sig = AlgebraSignature(
            (GeneratorSymbol("a", 2, "base"), GeneratorSymbol("z", 7, "base")),
            truncation=T,
        )
        a = sig.gen("a")
        return CDGA(sig, {"z": a * a * a * a})
    raise ValueError(f"unknown base template {kind!r}")


_BASE_KINDS = ("even2", "even4", "even22", "odd3", "cp3")

_BASE_MIN_T = {"even2": 2, "even4": 4, "even22": 2, "odd3": 3, "cp3": 8}


def random_bundle(rng: random.Random) -> BundleModel:
    """One valid model: template base and fiber, random cocycle differentials."""
    kind = rng.choice(_BASE_KINDS)
    degrees = rng.choice(_FIBER_TEMPLATES)
    T = max(max(degrees) + 2, _BASE_MIN_T[kind])
    base = _base_template(kind, T)
    fiber = tuple(
        GeneratorSymbol(f"v{i + 1}", d, "fiber") for i, d in enumerate(degrees)
    )
    D_values = {}
    for g in fiber:
        slice_basis = degree_basis(base.signature, g.degree + 1)
        cocycles = linalg.kernel_basis(differential_matrix(base, g.degree + 1))
        value = base.signature.zero()
        for vecs in cocycles:
            coeff = rng.randint(-2, 2)
            if coeff:
                value = value + from_coordinates(base.signature, slice_basis, vecs).scale(coeff)
        if not value.is_zero():
            D_values[g.name] = value
    return BundleModel(base=base, fiber=fiber, D_values=D_values)


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_model(path: str, out_err) -> BundleModel | None:
    try:
        text = _read_text(path)
    except OSError as exc:
        print(f"error: {exc}", file=out_err)
        return None
    try:
        return parse_model(text)
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"{path}:{d}", file=out_err)
        return None


def _load_valid_model(path: str, out_err) -> BundleModel | None:
    model = _load_model(path, out_err)
    if model is None:
        return None
    violations = validate_bundle(model)
    if violations:
        for v in violations:
            print(f"invalid model: {v}", file=out_err)
        return None
    return model


def _cmd_validate(args) -> int:
    model = _load_model(args.file, sys.stderr)
    if model is None:
        return 1
    violations = validate_bundle(model)
    if violations:
        for v in violations:
            print(v)
        return 1
    print("valid")
    return 0


def _cmd_cohomology(args) -> int:
    model = _load_valid_model(args.file, sys.stderr)
    if model is None:
        return 1
    dim, reps = cohomology_basis(model.base, args.degree)
    print(f"dim H^{args.degree} = {dim}")
    for i, rep in enumerate(reps):
        print(f"  [{i}] {format_element(rep)}")
    return 0


def _cmd_classes(args) -> int:
    model = _load_valid_model(args.file, sys.stderr)
    if model is None:
        return 1
    classes = characteristic_classes(model)
    for g in model.fiber:
        c = classes[g.name]
        coords = ", ".join(str(x) for x in c.coordinates)
        status = "zero" if c.is_zero() else "nonzero"
        print(f"alpha_{g.name} in H^{c.degree}: ({coords}) [{status}]")
    return 0


def _cmd_np(args) -> int:
    model = _load_valid_model(args.file, sys.stderr)
    if model is None:
        return 1
    report = compute_N_lin(model)
    for v in report.verdicts:
        if v.injective:
            print(f"degree {v.degree}: injective")
        else:
            kv = ", ".join(str(x) for x in v.kernel_vector)
            print(f"degree {v.degree}: killable, kernel vector ({kv})")
            if v.substitution is not None:
                new_gen = (
                    v.substitution.correction.signature.gen(v.substitution.target)
                    - v.substitution.correction
                )
                print(
                    f"  substitution: {v.substitution.target}' = {format_element(new_gen)}"
                )
    print(f"n_lin = {report.n_lin} (n = {report.n})")
    return 0


def _cmd_normalize(args) -> int:
    model = _load_valid_model(args.file, sys.stderr)
    if model is None:
        return 1
    substitutions, normalized = normalize_generators(model)
    for s in substitutions:
        new_gen = s.correction.signature.gen(s.target) - s.correction
        print(f"# {s.target}' = {format_element(new_gen)}")
    sys.stdout.write(format_model(normalized))
    return 0


def _cmd_hnil(args) -> int:
    model = _load_valid_model(args.file, sys.stderr)
    if model is None:
        return 1
    report = check_theorem(model)
    print(f"hnil = {report.hnil}")
    if report.homology_dims:
        dims = ", ".join(f"p={p} dim {d}" for p, d in report.homology_dims)
        print(f"homology: {dims}")
    else:
        print("homology: trivial")
    return 0


def _cmd_check(args) -> int:
    model = _load_valid_model(args.file, sys.stderr)
    if model is None:
        return 1
    report = check_theorem(model)
    print(emit_report(report, model, fmt="json" if args.json else "human"))
    return 0 if report.holds else 3


def _cmd_example(args) -> int:
    try:
        sys.stdout.write(builtin_example(args.name))
    except UnknownExampleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_list_examples(args) -> int:
    for name in example_names():
        print(name)
    return 0


def _cmd_sweep(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for i in range(args.count):
        model = random_bundle(rng)
        report = check_theorem(model)
        verdict = "ok" if report.holds else "VIOLATED"
        print(
            f"model {i}: n={report.n} n_lin={report.n_lin} hnil={report.hnil} "
            f"[{verdict}]"
        )
        if not report.holds:
            failures += 1
    print(f"sweep: {args.count - failures}/{args.count} hold")
    return 0 if failures == 0 else 3


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hnil",
        description=(
            "Compute characteristic classes, derivation homology, and "
            "nilpotency bounds for principal-bundle models given as relative "
            "Sullivan data. FILE may be '-' for stdin."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", help="parse and validate a model file").add_argument("file")
    c = sub.add_parser("cohomology", help="base cohomology of one degree")
    c.add_argument("file")
    c.add_argument("--degree", type=int, required=True)
    sub.add_parser("classes", help="characteristic classes").add_argument("file")
    sub.add_parser("np", help="per-degree injectivity and n_lin").add_argument("file")
    sub.add_parser(
        "normalize", help="apply killable-degree substitutions"
    ).add_argument("file")
    sub.add_parser("hnil", help="nilpotency index of derivation homology").add_argument("file")
    ch = sub.add_parser("check", help="full inequality report")
    ch.add_argument("file")
    ch.add_argument("--json", action="store_true")
    e = sub.add_parser("example", help="print a builtin model")
    e.add_argument("name")
    sub.add_parser("list-examples", help="list builtin model names")
    s = sub.add_parser("sweep", help="check random valid models")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    return p


_COMMANDS = {
    "validate": _cmd_validate,
    "cohomology": _cmd_cohomology,
    "classes": _cmd_classes,
    "np": _cmd_np,
    "normalize": _cmd_normalize,
    "hnil": _cmd_hnil,
    "check": _cmd_check,
    "example": _cmd_example,
    "list-examples": _cmd_list_examples,
    "sweep": _cmd_sweep,
}


def run_cli(argv) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except HnilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
