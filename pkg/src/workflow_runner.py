import json
import logging
import os
import sys
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import yaml

from braids.braid_core import (
    BraidWord,
    free_reduce,
    markov_reduce,
    mirror,
    parse_word,
    split_factors,
)
from braids.resolving_tree import brute_force_min_depth, build_tree, depth_formula, tree_depth
from braids.square_finder import SquareWitness, find_square
from errors import BraidCalculusError, ScopeError
from helpers import env_parse_replace, logged_method, parse_log_level, set_breadcrumb_flag, set_logger_level
from invariants.oracle import alexander_of_closure
from invariants.skein_poly import HalfLaurent, alexander_from_tree, to_text
from invariants.state_sum import alexander_state_sum, build_diagram, enumerate_states, extremal_states
from output.exporters import (
    states_to_dot,
    states_to_json,
    tree_to_dict,
    tree_to_dot,
    tree_to_text,
    witness_to_dict,
)
from verification.verify_suite import VerifySettings, run_suite

LOGGER = logging.getLogger(__name__)

COMMANDS = ("normalize", "square", "tree", "alexander", "depth", "states", "verify")
METHODS = ("skein", "statesum", "burau", "all")
OUTPUTS = ("text", "json", "dot")


@dataclass(kw_only=True)
class AppProps:
    loglevel: int = field(default=logging.INFO)
    enable_method_breadcrumbs: bool = field(default=False)
    verify: VerifySettings = field(default_factory=VerifySettings)


@dataclass(kw_only=True)
class RunConfig:
    command: str
    word: str = field(default="")
    strands: Optional[int] = field(default=None)
    method: str = field(default="all")
    output: str = field(default="text")
    seed: int = field(default=0)
    trace: bool = field(default=False)
    budget: Optional[int] = field(default=None)
    app_props: AppProps = field(default_factory=AppProps)


@logged_method
def get_app_props(in_config: Dict) -> AppProps:
    in_config = in_config or {}
    system = in_config.get("system") or {}
    if not system:
        LOGGER.warning("No System Configuration found. Using default values.")
    loglevel = parse_log_level(system.get("log_level", "INFO"))
    set_logger_level(loglevel)
    breadcrumbs = system.get("enable_method_breadcrumbs", False) is True
    set_breadcrumb_flag(breadcrumbs)

    verify = dict(in_config.get("verify") or {})
    verify.update(in_config.get("search") or {})
    known = VerifySettings.__dataclass_fields__
    unknown = [k for k in verify if k not in known]
    if unknown:
        LOGGER.warning(f"Ignoring unknown verify/search settings: {', '.join(unknown)}")
    settings = VerifySettings(**{k: v for k, v in verify.items() if k in known})
    return AppProps(loglevel=loglevel, enable_method_breadcrumbs=breadcrumbs, verify=settings)


@logged_method
def try_parse_config_file(config_yaml_path: str) -> Dict:
    if not os.path.exists(config_yaml_path):
        LOGGER.warning(f"Configuration File {config_yaml_path} not found. Using default values.")
        return {"config": {}}
    LOGGER.debug("Trying to parse Configuration File: " + config_yaml_path)
    with open(config_yaml_path, "r") as config_file:
        core_config = yaml.safe_load(config_file) or {}
    LOGGER.debug("Parsing Environment Variables")
    env_parse_replace(core_config)
    return core_config


@dataclass
class PreparedInput:
    word: BraidWord
    factors: List[BraidWord]
    notes: List[str]
    mixed: bool = False


@logged_method
def prepare_input(config: RunConfig) -> PreparedInput:
    w = parse_word(config.word, config.strands)
    notes = []
    if w.letters and all(k < 0 for k in w.letters):
        w = mirror(w)
        notes.append("negative braid: mirrored to a positive braid, the closure is the mirror image")
    if any(k < 0 for k in w.letters):
        return PreparedInput(word=w, factors=[], notes=notes, mixed=True)
    factors = split_factors(w)
    if len(factors) > 1:
        notes.append(f"split closure: processing {len(factors)} strictly positive factors independently")
    return PreparedInput(word=w, factors=factors, notes=notes)


def _require_positive(prepared: PreparedInput, command: str) -> None:
    if prepared.mixed:
        raise ScopeError(f"'{command}' covers positive or negative braids only, {prepared.word} mixes signs")


def _factor_heading(prepared: PreparedInput, k: int, f: BraidWord) -> Optional[str]:
    return f"factor {k + 1}: {f}" if len(prepared.factors) > 1 else None


def _emit(lines: List[str]) -> None:
    for line in lines:
        print(line)


def run_normalize(config: RunConfig, prepared: PreparedInput) -> List[str]:
    reduced = markov_reduce(free_reduce(prepared.word))
    if config.output == "json":
        return [json.dumps({"word": list(reduced.letters), "n": reduced.n, "p": reduced.p})]
    return [str(reduced)]


def run_square(config: RunConfig, prepared: PreparedInput) -> List[str]:
    _require_positive(prepared, "square")
    results = [find_square(f) for f in prepared.factors]
    if config.output == "json":
        return [json.dumps([witness_to_dict(r, config.trace) for r in results], indent=2)]
    lines = []
    for k, (f, result) in enumerate(zip(prepared.factors, results)):
        heading = _factor_heading(prepared, k, f)
        if heading:
            lines.append(heading)
        if isinstance(result, SquareWitness):
            lines.append(f"square sigma_{result.generator}^2 at position {result.position} of {result.word}")
        else:
            lines.append(f"no square: closure is the {result.components}-component unlink")
        if config.trace:
            lines.extend(f"  {move.rule.value} {'' if move.position is None else move.position}".rstrip() for move in result.trace)
    return lines


def run_tree(config: RunConfig, prepared: PreparedInput) -> List[str]:
    _require_positive(prepared, "tree")
    trees = [build_tree(f) for f in prepared.factors]
    if config.output == "json":
        payload = [{"depth": tree_depth(t), "tree": tree_to_dict(t)} for t in trees]
        return [json.dumps(payload, indent=2)]
    if config.output == "dot":
        return [tree_to_dot(t) for t in trees]
    lines = []
    for k, (f, t) in enumerate(zip(prepared.factors, trees)):
        heading = _factor_heading(prepared, k, f)
        if heading:
            lines.append(heading)
        lines.append(tree_to_text(t))
        lines.append(f"depth = {tree_depth(t)}")
    return lines


def _statesum(f: BraidWord) -> HalfLaurent:
    if f.n == 1:
        return HalfLaurent.one()
    return alexander_state_sum(build_diagram(f))


def _factor_polynomials(f: BraidWord, method: str) -> Dict[str, HalfLaurent]:
    out = {}
    if method in ("skein", "all"):
        out["skein"] = alexander_from_tree(build_tree(f))
    if method in ("statesum", "all"):
        out["statesum"] = _statesum(f)
    if method in ("burau", "all"):
        out["burau"] = alexander_of_closure(f)
    return out


def run_alexander(config: RunConfig, prepared: PreparedInput) -> List[str]:
    if prepared.mixed:
        if config.method != "burau":
            raise ScopeError(f"Mixed-sign words only support --method burau, received {config.method}")
        factors = [prepared.word]
        results = [{"burau": alexander_of_closure(markov_reduce(free_reduce(prepared.word)))}]
    else:
        factors = prepared.factors
        results = [_factor_polynomials(f, config.method) for f in factors]
    if config.output == "json":
        payload = {
            "factors": [{name: to_text(pz) for name, pz in r.items()} for r in results],
            "split": len(factors) > 1,
        }
        return [json.dumps(payload, indent=2)]
    lines = []
    for k, (f, r) in enumerate(zip(factors, results)):
        heading = _factor_heading(prepared, k, f) if not prepared.mixed else None
        if heading:
            lines.append(heading)
        lines.extend(f"{name}: {to_text(pz)}" for name, pz in r.items())
    if len(factors) > 1:
        lines.append("link: 0 (split closure)")
    return lines


def _depth_line(f: BraidWord, budget: Optional[int], app_props: AppProps) -> Tuple[str, bool]:
    formula = depth_formula(f)
    depth = tree_depth(build_tree(f))
    breadths = {name: pz.breadth() for name, pz in _factor_polynomials(f, "all").items()}
    matching = [b for b in breadths.values() if b == formula]
    certified = formula == depth and bool(matching)
    if certified:
        line = f"depth = {formula} (CERTIFIED: tree {depth} = breadth {formula})"
    else:
        shown = ", ".join(f"{name} {b}" for name, b in breadths.items())
        line = f"depth = {formula} (UNCERTIFIED: tree {depth}, breadth {shown})"
    if budget is not None:
        found = brute_force_min_depth(
            f,
            budget,
            max_word_length=app_props.verify.max_word_length,
            orbit_limit=app_props.verify.orbit_limit,
        )
        line += f"; brute force {found}"
    return line, certified


def run_depth(config: RunConfig, prepared: PreparedInput) -> Tuple[List[str], int]:
    _require_positive(prepared, "depth")
    lines = []
    status = 0
    for k, f in enumerate(prepared.factors):
        heading = _factor_heading(prepared, k, f)
        line, certified = _depth_line(f, config.budget, config.app_props)
        lines.append(f"{heading}: {line}" if heading else line)
        if not certified:
            status = 4
    return lines, status


def run_states(config: RunConfig, prepared: PreparedInput) -> List[str]:
    _require_positive(prepared, "states")
    lines = []
    for k, f in enumerate(prepared.factors):
        heading = _factor_heading(prepared, k, f)
        if f.n == 1:
            lines.append(f"{heading}: isolated strand, no crossings" if heading else "isolated strand, no crossings")
            continue
        diagram = build_diagram(f)
        states = enumerate_states(diagram)
        total = alexander_state_sum(diagram, states)
        low, high = extremal_states(diagram, states)
        if config.output == "json":
            lines.append(states_to_json(states, total, (low, high)))
            continue
        if config.output == "dot":
            lines.append(states_to_dot(diagram, (low, high)))
            continue
        if heading:
            lines.append(heading)
        for s in states:
            pairs = " ".join(f"{c.name}->{corner.region.name}" for c, corner in s.assignment)
            lines.append(f"{s.weight_text}  {pairs}")
        lines.append(f"states: {len(states)}  total: {to_text(total)}")
        lines.append(f"lowest: {low.weight_text}  highest: {high.weight_text}")
    return lines


def run_verify(config: RunConfig) -> Tuple[List[str], int]:
    report = run_suite(config.app_props.verify, config.seed)
    lines = [report.summary()]
    if config.output == "json":
        lines = [
            json.dumps(
                {
                    "seed": config.seed,
                    "passed": report.passed,
                    "failed": report.failed,
                    "words": report.words.to_dict(orient="records"),
                    "battery": report.battery.to_dict(orient="records"),
                    "certification": report.certification.to_dict(orient="records"),
                },
                indent=2,
                default=str,
            )
        ]
    return lines, 0 if report.failed == 0 else 4


@logged_method
def run(config: RunConfig) -> int:
    try:
        status = 0
        if config.command == "verify":
            lines, status = run_verify(config)
        else:
            prepared = prepare_input(config)
            for note in prepared.notes:
                print(f"# {note}")
            match config.command:
                case "normalize":
                    lines = run_normalize(config, prepared)
                case "square":
                    lines = run_square(config, prepared)
                case "tree":
                    lines = run_tree(config, prepared)
                case "alexander":
                    lines = run_alexander(config, prepared)
                case "depth":
                    lines, status = run_depth(config, prepared)
                case "states":
                    lines = run_states(config, prepared)
                case other:
                    raise ScopeError(f"Unknown command {other}")
        _emit(lines)
        return status
    except BraidCalculusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


@logged_method
def execute_workflow(arg_flags: Namespace) -> int:
    LOGGER.debug("Starting Workflow Runner")
    try:
        core_config = try_parse_config_file(config_yaml_path=arg_flags.config_file)
    except BraidCalculusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    app_props = get_app_props(core_config.get("config"))
    if arg_flags.budget is not None:
        app_props.verify.brute_force_budget = arg_flags.budget
    config = RunConfig(
        command=arg_flags.command,
        word=arg_flags.word,
        strands=arg_flags.strands,
        method=arg_flags.method,
        output=arg_flags.output,
        seed=arg_flags.seed,
        trace=arg_flags.trace,
        budget=arg_flags.budget,
        app_props=app_props,
    )
    return run(config)
