"""Command line interface: parse a configuration, run one operation,
emit a deterministic JSON report on stdout.

Exit codes: 0 on success, 1 when a verification command found a
violation (or the requested t is out of range), 2 on usage, parse, or
validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import core, mobius, probspace, structure
from .core import Configuration, Valuation
from .mobius import Classification, RestBound
from .poly import (
    AlgebraicRoot,
    format_rational,
    parse_rational,
    poly_to_strings,
    root_to_json,
)

SCHEMA_VERSION = "1"


class ParseError(ValueError):
    """Input file could not be parsed; carries line information."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


# Declares, for the coverage test, the one subcommand through which each
# library operation is reachable.
OPERATION_COMMANDS = {
    # poly
    "add": "mobius",
    "mul": "mobius",
    "derivative": "check-identities",
    "evaluate": "classify",
    "series_inverse": "series",
    "sturm_count": "critical-root",
    "first_positive_root": "critical-root",
    "compare_roots": "critical-root",
    # core
    "from_nubs": "builtin",
    "from_independence_list": "check-identities",
    "is_independent": "space",
    "enumerate_independence_sets": "space",
    "nubs_of": "builtin",
    "is_parallel": "relative",
    "relative_configuration": "relative",
    "valuation_of": "space",
    "canonical_key": "builtin",
    # mobius
    "mobius_polynomial": "mobius",
    "relative_mobius": "relative",
    "mobius_transform": "verify",
    "inversion_check": "check-identities",
    "derivative_identity_residual": "check-identities",
    "critical_root": "critical-root",
    "classify": "classify",
    "rest_polynomial": "mobius",
    # probspace
    "atoms_from_intersections": "verify",
    "event_probability": "verify",
    "canonical_space": "space",
    "verify_realization": "verify",
    "probabilistic_range": "critical-root",
    "sample": "sample",
    # structure
    "components": "decompose",
    "is_irreducible": "decompose",
    "is_right_angled": "right-angled",
    "from_dependence_graph": "builtin",
    "star": "builtin",
    "trace_series": "series",
    "trace_count_cf": "cf-count",
    "right_angled_properties": "right-angled",
    "symmetric_counts": "symmetric-counts",
    "builtin": "builtin",
}

COMMANDS = (
    "mobius",
    "relative",
    "critical-root",
    "classify",
    "space",
    "verify",
    "sample",
    "decompose",
    "right-angled",
    "series",
    "cf-count",
    "symmetric-counts",
    "builtin",
    "check-identities",
)


def parse_config_json(text: str) -> tuple[Configuration, Valuation]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), exc.lineno) from exc
    if not isinstance(data, dict) or "vertices" not in data:
        raise ParseError("expected an object with a 'vertices' list")
    labels = data["vertices"]
    if not isinstance(labels, list) or not all(isinstance(v, str) for v in labels):
        raise ParseError("'vertices' must be a list of strings")
    n = len(labels)
    index = {label: i for i, label in enumerate(labels)}
    if len(index) != n:
        raise ParseError("vertex labels must be unique")
    nubs = []
    for entry in data.get("nubs", []):
        if not isinstance(entry, list):
            raise ParseError(f"nub {entry!r} is not a list of labels")
        mask = 0
        for label in entry:
            if label not in index:
                raise ParseError(f"nub {entry!r} mentions unknown vertex {label!r}")
            mask |= 1 << index[label]
        nubs.append(mask)
    config = core.from_nubs(n, nubs, labels)
    weights = [Fraction(1)] * n
    for label, value in data.get("weights", {}).items():
        if label not in index:
            raise ParseError(f"weight for unknown vertex {label!r}")
        if isinstance(value, float):
            raise ParseError(f"weight for {label!r} must be exact, not a float")
        try:
            weights[index[label]] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad weight {value!r} for vertex {label!r}") from exc
    return config, core.valuation_of(config, weights)


def parse_config_text(text: str) -> tuple[Configuration, Valuation]:
    labels: list[str] | None = None
    nub_lines: list[tuple[int, list[str]]] = []
    weight_lines: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'directive: arguments', got {line!r}", lineno)
        directive, _, rest = line.partition(":")
        directive = directive.strip()
        args = rest.split()
        if directive == "vertices":
            if labels is not None:
                raise ParseError("duplicate 'vertices' line", lineno)
            labels = args
        elif directive == "nub":
            nub_lines.append((lineno, args))
        elif directive == "weight":
            if len(args) != 2:
                raise ParseError("'weight' needs a vertex and a rational", lineno)
            weight_lines.append((lineno, args[0], args[1]))
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno)
    if labels is None:
        raise ParseError("missing 'vertices' line")
    index = {label: i for i, label in enumerate(labels)}
    if len(index) != len(labels):
        raise ParseError("vertex labels must be unique")
    nubs = []
    for lineno, names in nub_lines:
        mask = 0
        for name in names:
            if name not in index:
                raise ParseError(f"unknown vertex {name!r}", lineno)
            mask |= 1 << index[name]
        nubs.append(mask)
    config = core.from_nubs(len(labels), nubs, labels)
    weights = [Fraction(1)] * len(labels)
    for lineno, name, value in weight_lines:
        if name not in index:
            raise ParseError(f"unknown vertex {name!r}", lineno)
        try:
            weights[index[name]] = parse_rational(value)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
    return config, core.valuation_of(config, weights)


def parse_config(text: str) -> tuple[Configuration, Valuation]:
    """Parse the JSON or the line-oriented text format."""
    if text.lstrip().startswith("{"):
        return parse_config_json(text)
    return parse_config_text(text)


def config_to_json(config: Configuration, valuation: Valuation) -> dict:
    data: dict[str, Any] = {
        "vertices": list(config.labels),
        "nubs": [config.labels_of(nub) for nub in config.nubs],
    }
    weights = {
        config.label_of(i): format_rational(w)
        for i, w in enumerate(valuation.weights)
        if w != 1
    }
    if weights:
        data["weights"] = weights
    return data


def _canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _digest(config: Configuration, valuation: Valuation) -> str:
    blob = _canonical_json(config_to_json(config, valuation))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _root_json(root: AlgebraicRoot) -> Any:
    if root.is_rational:
        return format_rational(root.value)
    data = root_to_json(root)
    data["approx"] = root.approx()
    return data


def _rest_json(rest: Fraction | RestBound) -> Any:
    if isinstance(rest, Fraction):
        return format_rational(rest)
    return {
        "sign": rest.sign,
        "lo": format_rational(rest.lo),
        "hi": format_rational(rest.hi),
    }


def _classification_json(config: Configuration, result: Classification) -> dict:
    return {
        "mu": None,  # filled by callers that have the polynomial at hand
        "t0": _root_json(result.critical_root),
        "type": result.config_type,
        "rest": _rest_json(result.rest_at_t0),
        "attained_at": [config.labels_of(x) for x in result.attained_at],
    }


def _load(args: argparse.Namespace) -> tuple[Configuration, Valuation]:
    if getattr(args, "name", None) and getattr(args, "input", None):
        raise ParseError("give either --input or --name, not both")
    if getattr(args, "name", None):
        config = structure.builtin(args.name)
        return config, Valuation.uniform(config.n)
    if not getattr(args, "input", None):
        raise ParseError("an input configuration is required (--input or --name)")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc}") from exc
    return parse_config(text)


def _cap(args: argparse.Namespace) -> int:
    return args.max_n


def _sorted_masks(masks) -> list[int]:
    return sorted(masks, key=lambda m: (m.bit_count(), m))


def _cmd_mobius(args, config, valuation) -> tuple[dict, int]:
    mu = mobius.mobius_polynomial(config, valuation, _cap(args))
    rest = mobius.rest_polynomial(config, valuation, _cap(args))
    if rest != mu:
        raise AssertionError("rest polynomial must alias the Mobius polynomial")
    return {"mu": poly_to_strings(mu)}, 0


def _cmd_relative(args, config, valuation) -> tuple[dict, int]:
    if args.set is None:
        raise ParseError("the relative command needs --set")
    names = [s for s in args.set.split(",") if s]
    anchor = config.mask_of_labels(names)
    view = core.relative_configuration(config, anchor)
    parallel = [
        a
        for a in range(config.n)
        if not (anchor >> a) & 1 and core.is_parallel(config, anchor, 1 << a)
    ]
    if core.mask_from_indices(parallel) != view.vertices:
        raise AssertionError("parallel vertices disagree with the relative view")
    poly = mobius.relative_mobius(config, valuation, anchor, _cap(args))
    return {
        "set": config.labels_of(anchor),
        "vertices": config.labels_of(view.vertices),
        "nubs": [config.labels_of(nub) for nub in view.relative_nubs],
        "mu_relative": poly_to_strings(poly),
    }, 0


def _cmd_critical_root(args, config, valuation) -> tuple[dict, int]:
    root, attained = mobius.critical_root(config, valuation, _cap(args))
    if probspace.probabilistic_range(config, valuation, _cap(args)) != root:
        raise AssertionError("probabilistic range disagrees with the critical root")
    return {
        "t0": _root_json(root),
        "attained_at": [config.labels_of(x) for x in attained],
    }, 0


def _cmd_classify(args, config, valuation) -> tuple[dict, int]:
    result = mobius.classify(config, valuation, _cap(args))
    payload = _classification_json(config, result)
    payload["mu"] = poly_to_strings(mobius.mobius_polynomial(config, valuation, _cap(args)))
    return payload, 0


def _space_or_error(args, config, valuation):
    t = parse_rational(args.t)
    return probspace.canonical_space(config, valuation, t, _cap(args))


def _out_of_range_payload(config, exc: probspace.OutOfRange) -> dict:
    return {
        "error": "out-of-range",
        "t": format_rational(exc.t),
        "witness": config.labels_of(exc.witness),
        "value": format_rational(exc.value),
    }


def _cmd_space(args, config, valuation) -> tuple[dict, int]:
    if args.t is None:
        raise ParseError("the space command needs --t")
    try:
        space = _space_or_error(args, config, valuation)
    except probspace.OutOfRange as exc:
        return _out_of_range_payload(config, exc), 1
    atoms = [
        {"x": config.labels_of(x), "mass": format_rational(mass)}
        for x, mass in space.sorted_atoms()
    ]
    return {
        "t": format_rational(space.t),
        "atoms": atoms,
        "rest": format_rational(space.rest()),
        "covering": space.rest() == 0,
    }, 0


def _cmd_verify(args, config, valuation) -> tuple[dict, int]:
    if args.t is None:
        raise ParseError("the verify command needs --t")
    try:
        space = _space_or_error(args, config, valuation)
    except probspace.OutOfRange as exc:
        return _out_of_range_payload(config, exc), 1
    report = probspace.verify_realization(space)
    # Cross-check through the sign-word route: prescribing the
    # intersection probabilities must reproduce the atom masses.
    t = space.t
    q = {
        mask: (
            valuation.of(mask) * t ** mask.bit_count()
            if config.is_independent(mask)
            else Fraction(0)
        )
        for mask in range(1 << config.n)
    }
    word_atoms = probspace.atoms_from_intersections(config.n, q)
    routes_agree = True
    for word, mass in word_atoms.items():
        expected = space.atoms.get(word.positives, Fraction(0))
        if mass != expected:
            routes_agree = False
    for x, mass in space.atoms.items():
        h = mobius.mobius_transform(config, valuation, x, _cap(args))
        if h(t) != mass:
            routes_agree = False
    payload = {
        "t": format_rational(space.t),
        "marginals_ok": report.marginals_ok,
        "independence_ok": report.independence_ok,
        "exclusivity_ok": report.exclusivity_ok,
        "routes_agree": routes_agree,
        "covering": report.covering,
        "rest": format_rational(report.rest),
        "violations": report.violations,
    }
    ok = report.ok and routes_agree
    return payload, 0 if ok else 1


def _cmd_sample(args, config, valuation) -> tuple[dict, int]:
    if args.t is None:
        raise ParseError("the sample command needs --t")
    try:
        space = _space_or_error(args, config, valuation)
    except probspace.OutOfRange as exc:
        return _out_of_range_payload(config, exc), 1
    tallies = probspace.sample(space, args.count, args.seed)
    counts = [
        {"x": config.labels_of(x), "n": tallies[x]}
        for x, _ in space.sorted_atoms()
    ]
    return {
        "t": format_rational(space.t),
        "count": args.count,
        "seed": args.seed,
        "counts": counts,
    }, 0


def _cmd_decompose(args, config, valuation) -> tuple[dict, int]:
    decomposition = structure.components(config)
    parts = []
    for part in decomposition.components:
        parts.append(
            {
                "vertices": config.labels_of(part.vertices),
                "nubs": [part.config.labels_of(nub) for nub in part.config.nubs],
            }
        )
    whole = mobius.mobius_polynomial(config, valuation, _cap(args))
    product = None
    for part in decomposition.components:
        factor = mobius.mobius_polynomial(
            part.config, valuation.restrict(part.index_map), _cap(args)
        )
        product = factor if product is None else product * factor
    product_ok = product is not None and product == whole or config.n == 0
    return {
        "components": parts,
        "irreducible": structure.is_irreducible(config),
        "product_check": bool(product_ok),
    }, 0


def _cmd_right_angled(args, config, valuation) -> tuple[dict, int]:
    if not structure.is_right_angled(config):
        return {"right_angled": False}, 0
    report = structure.right_angled_properties(config, valuation, _cap(args))
    payload = {
        "right_angled": True,
        "type_one": report.type_one,
        "irreducible": report.irreducible,
        "t0": _root_json(report.critical_root),
        "simple_root": report.simple_root,
        "relative_positive": report.relative_positive,
        "monotone": report.monotone,
    }
    ok = (
        report.type_one
        and report.monotone
        and report.simple_root is not False
        and report.relative_positive is not False
    )
    return payload, 0 if ok else 1


def _cmd_series(args, config, valuation) -> tuple[dict, int]:
    series = structure.trace_series(config, valuation, args.order, _cap(args))
    return {
        "order": args.order,
        "coefficients": [format_rational(c) for c in series.coefficients],
    }, 0


def _cmd_cf_count(args, config, valuation) -> tuple[dict, int]:
    weighted = any(w != 1 for w in valuation.weights)
    count = structure.trace_count_cf(
        config, args.length, valuation if weighted else None, _cap(args)
    )
    value = format_rational(Fraction(count)) if weighted else int(count)
    return {"length": args.length, "count": value}, 0


def _cmd_symmetric_counts(args, config, valuation) -> tuple[dict, int]:
    report = structure.symmetric_counts(config, _cap(args))
    return {
        "counts": list(report.counts),
        "eta": list(report.eta),
        "formula_ok": report.formula_ok,
        "failed_level": report.failed_level,
    }, 0


def _cmd_builtin(args, config, valuation) -> tuple[dict, int]:
    rebuilt = core.from_nubs(config.n, core.nubs_of(config), config.labels)
    if core.canonical_key(rebuilt) != core.canonical_key(config):
        raise AssertionError("builtin round-trip changed the configuration")
    payload = config_to_json(config, valuation)
    payload["canonical_key"] = core.canonical_key(config)
    return payload, 0


def _cmd_check_identities(args) -> tuple[dict, int]:
    import random as _random

    rng = _random.Random(args.seed)
    failures: list[str] = []
    for trial in range(args.trials):
        config = structure.random_configuration(args.n, rng)
        valuation = structure.random_valuation(config, rng)
        if not mobius.derivative_identity_residual(config, valuation, args.max_n).is_zero:
            failures.append(f"trial {trial}: derivative identity residual nonzero")
        if not mobius.inversion_check(config, valuation, args.max_n):
            failures.append(f"trial {trial}: inversion identity failed")
        whole = mobius.mobius_polynomial(config, valuation, args.max_n)
        product = None
        for part in structure.components(config).components:
            factor = mobius.mobius_polynomial(
                part.config, valuation.restrict(part.index_map), args.max_n
            )
            product = factor if product is None else product * factor
        if config.n and product != whole:
            failures.append(f"trial {trial}: decomposition product mismatch")
        members = list(core.enumerate_independence_sets(config, args.max_n))
        rebuilt = core.from_independence_list(config.n, members, config.labels, args.max_n)
        if rebuilt.nubs != config.nubs:
            failures.append(f"trial {trial}: independence-list round trip changed nubs")
    payload = {
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "checks": [
            "derivative_identity",
            "inversion",
            "decomposition_product",
            "independence_roundtrip",
        ],
        "failures": failures,
    }
    return payload, 0 if not failures else 1


def _pretty_summary(command: str, payload: dict) -> str:
    if command == "classify":
        return (
            f"type {payload['type']}, t0 = {payload['t0']}, rest = {payload['rest']}"
        )
    if command == "mobius":
        return "mu = [" + ", ".join(payload["mu"]) + "]"
    if command == "verify":
        status = "ok" if not payload.get("violations") else "VIOLATIONS"
        return f"verify at t = {payload.get('t')}: {status}"
    if command == "check-identities":
        return f"{payload['trials']} trials, {len(payload['failures'])} failures"
    return _canonical_json(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="configspaces",
        description="Exact computations on configurations and their Mobius polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--input", help="configuration file (JSON or text), '-' for stdin")
        cmd.add_argument("--name", help="built-in dataset name")
        cmd.add_argument("--pretty", action="store_true", help="human summary on stderr")
        cmd.add_argument("--max-n", type=int, default=core.DEFAULT_ENUMERATION_CAP)
        if name == "relative":
            cmd.add_argument("--set", help="comma separated vertex labels")
        if name in ("space", "verify", "sample"):
            cmd.add_argument("--t", help="rational event probability, e.g. 1/2")
        if name == "sample":
            cmd.add_argument("--count", type=int, default=10000)
            cmd.add_argument("--seed", type=int, default=0)
        if name == "series":
            cmd.add_argument("--order", type=int, default=8)
        if name == "cf-count":
            cmd.add_argument("--length", type=int, default=6)
        if name == "check-identities":
            cmd.add_argument("--n", type=int, default=8)
            cmd.add_argument("--trials", type=int, default=50)
            cmd.add_argument("--seed", type=int, default=0)
    return parser


_HANDLERS = {
    "mobius": _cmd_mobius,
    "relative": _cmd_relative,
    "critical-root": _cmd_critical_root,
    "classify": _cmd_classify,
    "space": _cmd_space,
    "verify": _cmd_verify,
    "sample": _cmd_sample,
    "decompose": _cmd_decompose,
    "right-angled": _cmd_right_angled,
    "series": _cmd_series,
    "cf-count": _cmd_cf_count,
    "symmetric-counts": _cmd_symmetric_counts,
    "builtin": _cmd_builtin,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "check-identities":
            payload, code = _cmd_check_identities(args)
            digest_blob = f"n={args.n};trials={args.trials};seed={args.seed}"
            digest = hashlib.sha256(digest_blob.encode()).hexdigest()[:16]
        else:
            config, valuation = _load(args)
            payload, code = _HANDLERS[args.command](args, config, valuation)
            digest = _digest(config, valuation)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (core.ConfigurationError, structure.UnknownDataset, structure.SelfLoop,
            structure.BadParameters, structure.NotRightAngled,
            mobius.TrivialConfiguration, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "input_digest": digest,
        "payload": payload,
    }
    print(_canonical_json(report))
    if args.pretty:
        print(_pretty_summary(args.command, payload), file=sys.stderr)
    return code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
