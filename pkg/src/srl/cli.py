"""Command-line front end.

Every command writes newline-delimited JSON records (``--format json``, the
default) or a plain table. Settings are merged in increasing priority:
built-in defaults, a flat ``key = value`` config file, ``SRL_*`` environment
variables, then command-line flags.

Exit codes: 0 when everything checked out, 1 for a VIOLATION verdict or a
failed ``--expect``, 2 for infeasible runs, exhausted budgets, ambiguous
class selectors and malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, fields
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, TextIO

import jsonschema

from . import __version__
from .atlas import BuiltGroup, build, element_kind, parse_group_spec
from .cache import ResultCache, cache_key
from .conjugacy import ConjugacyClass, class_survey, conjugacy_class, solvable_radical
from .counting import CountingInstance, counting_check, field_auto_bound_audit
from .errors import ParseError, SRLError
from .perm import format_cycles, inv, parse_cycles
from .verifier import (
    DEFAULT_BUDGET, INFEASIBLE, NONE_BUDGET, NONE_EXHAUSTIVE, UNSUPPORTED_ROWS, VIOLATION, WITNESS_FOUND,
    WitnessQuery, theorem_a_survey, tuple_witness,
)

log = logging.getLogger("srl")

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE = 0, 1, 2
COMMANDS = ("survey", "witness", "count", "audit", "radical", "parse")
KINDS = ("transvection", "reflection", "long_root", "three_cycle", "p_cycle")
KIND_ALIASES = {"root": "long_root", "siegel": "long_root", "unitary_reflection": "reflection"}
FAMILIES = {"psl2": "PSL2", "szb2": "SzB2", "sz": "SzB2", "reeg2": "ReeG2", "ree": "ReeG2"}


class UsageError(Exception):
    """Bad flags, config values or selectors."""


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    kind: str | None = None
    order: int | None = None
    rep: str | None = None
    k: int = 2
    mode: str = "exhaustive"
    seed: int | None = None
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    target: str = "nonsolvable"
    min_prime: int = 5
    escalate: bool = True
    cache_dir: str | None = None
    format: str = "json"
    timing: bool = False
    expect: str | None = None
    instance: str | None = None
    form: str = "full"
    family: str | None = None
    q0: int | None = None
    p: int | None = None
    text: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.mode not in ("exhaustive", "random"):
            raise UsageError(f"mode must be exhaustive or random, not {self.mode!r}")
        if self.mode == "random" and self.seed is None:
            raise UsageError("random mode requires --seed")
        if self.budget < 1:
            raise UsageError("budget must be at least 1")
        if self.k < 2:
            raise UsageError("k must be at least 2")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")
        if self.format not in ("json", "table"):
            raise UsageError(f"format must be json or table, not {self.format!r}")
        if self.target not in ("nonsolvable", "full_group"):
            raise UsageError(f"target must be nonsolvable or full_group, not {self.target!r}")
        if self.form not in ("full", "remark"):
            raise UsageError(f"form must be full or remark, not {self.form!r}")
        if self.kind is not None:
            self.kind = KIND_ALIASES.get(self.kind.lower(), self.kind.lower())
            if self.kind not in KINDS:
                raise UsageError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")


def _to_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _coercer(name: str) -> Callable[[str], object]:
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    if "int" in kind:
        def as_int(text: str) -> int:
            try:
                return int(text)
            except ValueError:
                raise UsageError(f"{name} must be an integer, got {text!r}") from None
        return as_int
    if "bool" in kind:
        return _to_bool
    return str


CONFIG_KEYS = tuple(f.name for f in fields(RunConfig) if f.name != "command")


def read_config_file(path: str | Path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment; dashes and underscores are interchangeable."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_").lower()
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _coercer(key)(value.strip('"'))
    return out


def read_env(environ: dict) -> dict:
    out = {}
    for key in CONFIG_KEYS:
        name = "SRL_" + key.upper()
        if name in environ:
            out[key] = _coercer(key)(environ[name])
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="flat key = value file with defaults for any flag")
    common.add_argument("--format", choices=("json", "table"))
    common.add_argument("--timing", action="store_true", help="add elapsed_ms to witness records")
    common.add_argument("--seed", type=int)
    common.add_argument("--expect", help="found/none (witness) or holds/fails (count, audit)")

    select = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    select.add_argument("--group", help='group spec, e.g. "PSL(2,7)" or "Wreath(Alt(5),2)"')
    select.add_argument("--kind", help="class selector: " + ", ".join(KINDS))
    select.add_argument("--order", type=int, help="class selector: element order")
    select.add_argument("--rep", help='class selector: explicit element in cycle notation, e.g. "(1,2,3)"')

    parser = _Parser(prog="srl", description="Conjugate-generation checks for small finite groups.")
    parser.add_argument("--version", action="version", version=f"srl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    quiet = {"argument_default": argparse.SUPPRESS}

    p = sub.add_parser("survey", parents=[common, select], **quiet, help="verdict for every class of prime order")
    p.add_argument("--budget", type=int)
    p.add_argument("--min-prime", dest="min_prime", type=int, help="smallest prime surveyed (default 5)")
    p.add_argument("--no-escalate", dest="escalate", action="store_false",
                   help="skip k=3/k=4 searches on exception classes")

    p = sub.add_parser("witness", parents=[common, select], **quiet, help="search for k conjugates generating a non-solvable group")
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=("exhaustive", "random"))
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--target", choices=("nonsolvable", "full_group"))
    p.add_argument("--cache-dir", dest="cache_dir")

    p = sub.add_parser("count", parents=[common], **quiet, help="evaluate the counting criterion on an instance file")
    p.add_argument("--instance", help="JSON instance file")
    p.add_argument("--form", choices=("full", "remark"))

    p = sub.add_parser("audit", parents=[common], **quiet, help="field-automorphism bound audit")
    p.add_argument("--family", help="psl2, szb2 or reeg2")
    p.add_argument("--q0", type=int)
    p.add_argument("--p", type=int)

    sub.add_parser("radical", parents=[common, select], **quiet, help="solvable radical of a group")

    p = sub.add_parser("parse", parents=[common], **quiet, help="parse and canonicalize a group spec")
    p.add_argument("text", nargs="?")
    p.add_argument("--group")
    return parser


def resolve_config(argv: list[str], environ: dict | None = None) -> RunConfig:
    environ = os.environ if environ is None else environ
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    config_path = ns.pop("config", None) or environ.get("SRL_CONFIG")
    merged: dict = {}
    if config_path:
        merged.update(read_config_file(config_path))
    merged.update(read_env(environ))
    merged.update(ns)
    return RunConfig(command=command, **merged)


# -- output --------------------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _validator() -> jsonschema.protocols.Validator:
    schema = json.loads(resources.files("srl").joinpath("schemas/report.schema.json").read_text())
    cls = jsonschema.validators.validator_for(schema)
    return cls(schema)


def validate_record(record: dict) -> None:
    _validator().validate(record)


class Emitter:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out
        self.records: list[dict] = []

    def emit(self, record: dict, table_lines: list[str] | None = None) -> None:
        validate_record(record)
        self.records.append(record)
        if self.fmt == "json":
            self.out.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            for line in table_lines if table_lines is not None else _default_table(record):
                self.out.write(line + "\n")
        self.out.flush()


def _default_table(record: dict) -> list[str]:
    width = max(len(k) for k in record)
    return [f"{k.ljust(width)}  {v if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True)}"
            for k, v in sorted(record.items())]


def _witness_line(rec: dict) -> str:
    cls = rec["class"]
    got = f"order {rec['subgroup_order']}" if rec["subgroup_order"] is not None else "-"
    cached = "  (cached)" if rec.get("cached") else ""
    return (f"{rec['group']}  class {cls['rep']} (order {cls['order']}, size {cls['size']})  "
            f"k={rec['k']} {rec['mode']}  {rec['status']}  {got}  tested {rec['tuples_tested']}{cached}")


# -- class selection -------------------------------------------------------------------------------


def _selected_classes(built: BuiltGroup, cfg: RunConfig) -> list[ConjugacyClass]:
    G = built.group
    if cfg.rep is not None:
        try:
            x = parse_cycles(cfg.rep, G.degree)
        except (ValueError, SRLError) as exc:
            raise UsageError(f"bad --rep: {exc}") from None
        if not G.contains(x):
            raise UsageError(f"{cfg.rep} is not an element of {built.spec}")
        return [conjugacy_class(G, x)]
    classes = class_survey(G, cfg.seed or 0)
    if cfg.order is not None:
        classes = [c for c in classes if c.element_order == cfg.order]
    if cfg.kind is not None:
        classes = [c for c in classes if element_kind(built, c.representative) == cfg.kind]
    unique: list[ConjugacyClass] = []
    for c in classes:
        if not any(inv(c.representative) in u for u in unique):
            unique.append(c)
    return unique


def _select_one(built: BuiltGroup, cfg: RunConfig, em: Emitter) -> ConjugacyClass | None:
    if cfg.rep is None and cfg.kind is None and cfg.order is None:
        raise UsageError("select a class with --kind, --order or --rep")
    found = _selected_classes(built, cfg)
    if len(found) == 1:
        return found[0]
    selector = " ".join(f"--{n} {getattr(cfg, n)}" for n in ("kind", "order", "rep") if getattr(cfg, n) is not None)
    message = "no class matches" if not found else f"{len(found)} classes match; refine with --order or --rep"
    rec = {"record": "candidates", "group": str(built.spec), "selector": selector, "message": message,
           "candidates": [c.to_json() for c in found]}
    em.emit(rec, [f"{message} ({selector}):"] + [
        f"  {c.to_json()['rep_cycles']}  order {c.element_order}  size {c.size}" for c in found])
    return None


# -- commands --------------------------------------------------------------------------------------


def cmd_parse(cfg: RunConfig, em: Emitter) -> int:
    text = cfg.text if cfg.text is not None else cfg.group
    if text is None:
        raise UsageError("parse needs a group spec")
    spec = parse_group_spec(text)
    em.emit({"record": "parse", "input": text, "canonical": str(spec), "spec": spec.to_dict()},
            [str(spec)])
    return EXIT_OK


def _need_group(cfg: RunConfig) -> BuiltGroup:
    if not cfg.group:
        raise UsageError("--group is required")
    return build(cfg.group)


def cmd_survey(cfg: RunConfig, em: Emitter) -> int:
    built = _need_group(cfg)
    start = time.perf_counter()
    verdicts = theorem_a_survey(built, seed=cfg.seed or 0, budget=cfg.budget, escalate=cfg.escalate,
                                min_prime=cfg.min_prime)
    if cfg.kind is not None or cfg.order is not None or cfg.rep is not None:
        wanted = _selected_classes(built, cfg)
        verdicts = [v for v in verdicts
                    if any(v.cls.representative in c or inv(v.cls.representative) in c for c in wanted)]
    name = str(built.spec)
    counts: dict[str, int] = {}
    for v in verdicts:
        counts[v.verdict] = counts.get(v.verdict, 0) + 1
        rec = v.to_json(name, cfg.timing)
        c = rec["class"]
        em.emit(rec, [f"{c['rep_cycles']}  order {c['element_order']}  size {c['size']}  {v.verdict}"
                      + (f"  [{v.table1_row}]" if v.table1_row else "")]
                + ["    " + _witness_line(r) for r in rec["escalation"]])
    summary = {"record": "survey_summary", "group": name, "group_order": built.group.order(),
               "classes": len(verdicts), "verdicts": dict(sorted(counts.items())),
               "unsupported_rows": list(UNSUPPORTED_ROWS)}
    if cfg.timing:
        summary["elapsed_ms"] = round(1000 * (time.perf_counter() - start), 3)
    em.emit(summary, [f"{name}: {len(verdicts)} classes, "
                      + ", ".join(f"{k} {n}" for k, n in sorted(counts.items()))])
    if counts.get(VIOLATION):
        return EXIT_FAIL
    if counts.get(INFEASIBLE):
        return EXIT_INFEASIBLE
    return EXIT_OK


def _witness_expectation(cfg: RunConfig, status: str) -> int:
    if cfg.expect is not None:
        want = cfg.expect.lower()
        if want not in ("found", "none"):
            raise UsageError("witness --expect takes found or none")
        if status == NONE_BUDGET:
            return EXIT_INFEASIBLE
        return EXIT_OK if (status == WITNESS_FOUND) == (want == "found") else EXIT_FAIL
    return EXIT_INFEASIBLE if status == NONE_BUDGET else EXIT_OK


def cmd_witness(cfg: RunConfig, em: Emitter) -> int:
    if not cfg.group:
        raise UsageError("--group is required")
    canonical = str(parse_group_spec(cfg.group))
    cache = ResultCache(cfg.cache_dir) if cfg.cache_dir else None
    key = None
    if cache is not None:
        key = cache_key({"command": "witness", "group": canonical, "kind": cfg.kind, "order": cfg.order,
                         "rep": cfg.rep, "k": cfg.k, "mode": cfg.mode, "seed": cfg.seed,
                         "budget": cfg.budget, "target": cfg.target})
        hit = cache.lookup(key)
        if hit is not None:
            for rec in hit:
                rec = dict(rec, cached=True)
                em.emit(rec, [_witness_line(rec)])
            return _witness_expectation(cfg, hit[-1]["status"])
    built = build(canonical)
    cls = _select_one(built, cfg, em)
    if cls is None:
        return EXIT_INFEASIBLE
    q = WitnessQuery(built.group, cls.representative, cfg.k, cfg.mode, cfg.budget, cfg.seed,
                     cfg.target, cfg.workers)
    report = tuple_witness(q, cls)
    rec = report.to_json(canonical, cfg.timing)
    em.emit(rec, [_witness_line(rec)])
    if cache is not None and report.status == NONE_EXHAUSTIVE:
        cache.store(key, [report.to_json(canonical)])
    return _witness_expectation(cfg, report.status)


def _holds_expectation(cfg: RunConfig, holds: bool) -> int:
    if cfg.expect is None:
        return EXIT_OK
    want = cfg.expect.lower()
    if want not in ("holds", "fails"):
        raise UsageError("--expect takes holds or fails here")
    return EXIT_OK if holds == (want == "holds") else EXIT_FAIL


def cmd_count(cfg: RunConfig, em: Emitter) -> int:
    if not cfg.instance:
        raise UsageError("--instance is required")
    try:
        inst = CountingInstance.load(cfg.instance)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad instance file {cfg.instance}: {exc}") from None
    verdict = counting_check(inst, cfg.form)
    rec = verdict.to_json()
    rec["name"] = inst.name or Path(cfg.instance).stem
    rec["n"] = [str(n) for n in inst.fixed_counts()]
    lines = [f"{'subgroup':<24}{'|x^G cap X|':>14}{'[G:X]':>14}{'n':>12}"]
    for s, n in zip(inst.subgroups, inst.fixed_counts()):
        lines.append(f"{s.label:<24}{s.intersection:>14}{s.index:>14}{str(n):>12}")
    lines.append(f"{cfg.form}: {verdict.lhs} vs {verdict.rhs}  -> {'holds' if verdict.holds else 'fails'}")
    lines.append(json.dumps(rec, sort_keys=True))
    em.emit(rec, lines)
    return _holds_expectation(cfg, verdict.holds)


def cmd_audit(cfg: RunConfig, em: Emitter) -> int:
    if cfg.family is None or cfg.q0 is None or cfg.p is None:
        raise UsageError("audit needs --family, --q0 and --p")
    family = FAMILIES.get(cfg.family.lower())
    if family is None:
        raise UsageError(f"unknown family {cfg.family!r}; choose psl2, szb2 or reeg2")
    audit = field_auto_bound_audit(family, cfg.q0, cfg.p)
    rec = audit.to_json()
    lines = [f"{family} q0={cfg.q0} p={cfg.p} q={audit.q}"]
    lines += [f"  {label:<22}{str(value):>24}" for label, value in audit.terms]
    lines.append(f"  {'sum':<22}{str(audit.bound):>24}")
    lines.append(f"  {audit.lhs_label:<22}{str(audit.class_size):>24}")
    lines.append(json.dumps(rec, sort_keys=True))
    em.emit(rec, lines)
    return _holds_expectation(cfg, audit.holds)


def cmd_radical(cfg: RunConfig, em: Emitter) -> int:
    built = _need_group(cfg)
    result = solvable_radical(built.group, seed=cfg.seed or 0)
    rec = {"record": "radical", "group": str(built.spec), "group_order": built.group.order(), **result.to_json()}
    em.emit(rec, [f"{built.spec}: |O_inf| = {result.order} of {built.group.order()}"]
            + [f"  generator {g}" for g in rec["generators"]])
    return EXIT_OK


HANDLERS = {"survey": cmd_survey, "witness": cmd_witness, "count": cmd_count,
            "audit": cmd_audit, "radical": cmd_radical, "parse": cmd_parse}


def _error_record(exc: BaseException) -> dict:
    rec = {"record": "error", "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        rec.update(position=exc.pos, expected=exc.expected)
    return rec


def run(cfg: RunConfig, out: TextIO) -> int:
    em = Emitter(cfg.format, out)
    try:
        return HANDLERS[cfg.command](cfg, em)
    except (SRLError, UsageError, ValueError, MemoryError) as exc:
        em.emit(_error_record(exc), [f"error: {exc}"])
        return EXIT_INFEASIBLE


def main(argv: list[str] | None = None, out: TextIO | None = None, environ: dict | None = None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="srl: %(levelname)s: %(message)s", stream=sys.stderr)
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = resolve_config(argv, environ)
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_INFEASIBLE
    except UsageError as exc:
        out.write(json.dumps(_error_record(exc), sort_keys=True) + "\n")
        return EXIT_INFEASIBLE
    try:
        return run(cfg, out)
    except Exception as exc:  # the exit-code contract holds even for bugs
        log.error("internal error: %r", exc)
        out.write(json.dumps(_error_record(exc), sort_keys=True) + "\n")
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
