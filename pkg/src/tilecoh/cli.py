"""Command-line front end.

Input is a JSON document in one of three modes (``subst1d``, ``subst2d``,
``complex``); see the README for the schema.  Exit codes: 0 success,
2 invalid input, 3 pipeline disagreement, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field, replace
from typing import Sequence

from . import catalog
from .analysis import (
    InsufficientDataError,
    deformations,
    exact_regularity,
    frequencies,
    regularity_empirical_check,
)
from .cohomology import CochainSystem, CohomologyResult, InvalidSystemError, complex_cohomology, graph_system
from .linalg import IntMatrix
from .subst1d import (
    DIAGNOSTIC_ONLY,
    PipelineDisagreement,
    Substitution1D,
    bd_diagnostics,
    build_ap,
    build_bd,
    preflight,
    results_agree,
    word_str,
)
from .subst2d import BlockSubstitution2D, build_ap2d

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_DISAGREE, EXIT_INTERNAL = 0, 2, 3, 4

COMMON_KEYS = {"schema", "mode", "name"}
MODE_KEYS = {
    "subst1d": {"alphabet", "rules", "lengths", "patches"},
    "subst2d": {"block_size", "alphabet", "rules"},
    "complex": {"vertices", "edges", "vertex_map", "edge_paths", "dims", "coboundaries", "endo", "labels"},
}
GRAPH_KEYS = {"vertices", "edges", "vertex_map", "edge_paths"}
RAW_KEYS = {"dims", "coboundaries", "endo"}


class ValidationError(ValueError):
    """Input document does not match the schema or is semantically invalid."""


@dataclass(frozen=True)
class Options:
    pipeline: str | None = None
    collared: bool = True
    format: str = "text"
    output: str | None = None
    dim: int | None = None
    depth: int = 12
    patches: tuple[str, ...] = ()
    lengths: tuple[float, ...] | None = None


@dataclass(frozen=True)
class JobSpec:
    mode: str
    payload: Substitution1D | BlockSubstitution2D | CochainSystem
    options: Options = field(default_factory=Options)
    name: str | None = None
    lengths: tuple[float, ...] | None = None
    patches: tuple[tuple[str, ...], ...] = ()


# ---------------------------------------------------------------------------
# parsing


class _Locator:
    """Find the line of a key in the raw text so messages point somewhere useful."""

    def __init__(self, text: str | None):
        self.lines = text.splitlines() if text else []

    def __call__(self, *keys: str) -> str:
        for key in reversed(keys):
            pat = re.compile(r'"' + re.escape(str(key)) + r'"\s*:')
            for i, line in enumerate(self.lines, start=1):
                if pat.search(line):
                    return f"line {i}: "
        return ""


def _fail(loc: _Locator, path: Sequence[str], msg: str):
    where = ".".join(str(p) for p in path)
    raise ValidationError(f"{loc(*path)}{where + ': ' if where else ''}{msg}")


def _expect(cond: bool, loc: _Locator, path: Sequence[str], msg: str):
    if not cond:
        _fail(loc, path, msg)


def _letters(value, loc, path, known: set[str]) -> tuple[str, ...]:
    if isinstance(value, str):
        word = tuple(value)
    elif isinstance(value, list) and all(isinstance(x, str) for x in value):
        word = tuple(value)
    else:
        _fail(loc, path, "expected a string or a list of letter names")
    _expect(len(word) > 0, loc, path, "empty rule")
    for x in word:
        _expect(x in known, loc, path, f"unknown letter {x!r}")
    return word


def _alphabet(doc, loc) -> list[str]:
    alpha = doc.get("alphabet")
    _expect(isinstance(alpha, list) and alpha, loc, ["alphabet"], "expected a nonempty list of letter names")
    _expect(all(isinstance(a, str) and a for a in alpha), loc, ["alphabet"], "letter names must be nonempty strings")
    _expect(len(set(alpha)) == len(alpha), loc, ["alphabet"], "repeated letter")
    return alpha


def _rules(doc, loc, alpha) -> dict:
    rules = doc.get("rules")
    _expect(isinstance(rules, dict), loc, ["rules"], "expected an object mapping letters to rules")
    for a in rules:
        _expect(a in alpha, loc, ["rules", a], "rule for a letter not in the alphabet")
    for a in alpha:
        _expect(a in rules, loc, ["rules"], f"missing rule for letter {a!r}")
    return rules


def _parse_subst1d(doc, loc) -> tuple[Substitution1D, tuple | None, tuple]:
    alpha = _alphabet(doc, loc)
    rules = _rules(doc, loc, alpha)
    known = set(alpha)
    words = {a: _letters(rules[a], loc, ["rules", a], known) for a in alpha}
    lengths = None
    if "lengths" in doc:
        ls = doc["lengths"]
        _expect(isinstance(ls, dict), loc, ["lengths"], "expected an object mapping letters to lengths")
        _expect(set(ls) == known, loc, ["lengths"], "need exactly one length per letter")
        for a, v in ls.items():
            _expect(isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0, loc, ["lengths", a], "length must be a positive number")
        lengths = tuple(float(ls[a]) for a in alpha)
    patches: tuple = ()
    if "patches" in doc:
        ps = doc["patches"]
        _expect(isinstance(ps, list), loc, ["patches"], "expected a list of words")
        patches = tuple(_letters(p, loc, ["patches"], known) for p in ps)
    return Substitution1D(tuple(alpha), tuple(words[a] for a in alpha)), lengths, patches


def _parse_subst2d(doc, loc) -> BlockSubstitution2D:
    alpha = _alphabet(doc, loc)
    rules = _rules(doc, loc, alpha)
    n = doc.get("block_size")
    _expect(isinstance(n, int) and not isinstance(n, bool) and n >= 2, loc, ["block_size"], "expected an integer >= 2")
    known = set(alpha)
    grids = []
    for a in alpha:
        g = rules[a]
        _expect(isinstance(g, list) and len(g) == n, loc, ["rules", a], f"expected {n} rows")
        for row in g:
            _expect(isinstance(row, list) and len(row) == n, loc, ["rules", a], f"non-square grid: every row needs {n} entries")
            for x in row:
                _expect(isinstance(x, str) and x in known, loc, ["rules", a], f"unknown letter {x!r}")
        grids.append(tuple(tuple(row) for row in g))
    return BlockSubstitution2D(tuple(alpha), n, tuple(grids))


def _int_matrix(value, loc, path, shape) -> IntMatrix:
    rows, cols = shape
    _expect(isinstance(value, list) and len(value) == rows, loc, path, f"expected {rows} rows")
    for row in value:
        _expect(isinstance(row, list) and len(row) == cols, loc, path, f"expected rows of length {cols}")
        for x in row:
            _expect(isinstance(x, int) and not isinstance(x, bool), loc, path, "entries must be integers")
    return IntMatrix.from_rows(value, cols=cols)


def _parse_complex(doc, loc) -> CochainSystem:
    keys = set(doc) - COMMON_KEYS
    if keys & GRAPH_KEYS:
        _expect(not keys & (RAW_KEYS | {"labels"}), loc, [], "mix of graph and raw cochain fields")
        for k in GRAPH_KEYS:
            _expect(k in doc, loc, [], f"missing field {k!r}")
        vertices = doc["vertices"]
        _expect(isinstance(vertices, list) and all(isinstance(v, str) for v in vertices), loc, ["vertices"], "expected a list of names")
        _expect(isinstance(doc["edges"], list), loc, ["edges"], "expected a list")
        edges = []
        for e in doc["edges"]:
            if isinstance(e, dict):
                _expect(set(e) == {"name", "tail", "head"}, loc, ["edges"], "edge objects need exactly name, tail, head")
                e = [e["name"], e["tail"], e["head"]]
            _expect(isinstance(e, list) and len(e) == 3 and all(isinstance(x, str) for x in e), loc, ["edges"], "edge must be [name, tail, head]")
            edges.append(tuple(e))
        vmap, paths = doc["vertex_map"], doc["edge_paths"]
        _expect(isinstance(vmap, dict), loc, ["vertex_map"], "expected an object")
        _expect(isinstance(paths, dict), loc, ["edge_paths"], "expected an object")
        for name, p in paths.items():
            _expect(isinstance(p, list) and all(isinstance(x, str) for x in p), loc, ["edge_paths", name], "expected a list of edge names, '-' prefix for reversal")
        known = {e[0] for e in edges}
        for name in paths:
            _expect(name in known, loc, ["edge_paths", name], "path given for an unknown edge")
        try:
            return graph_system(vertices, edges, vmap, paths)
        except ValueError as exc:
            _fail(loc, [], str(exc))
    for k in RAW_KEYS:
        _expect(k in doc, loc, [], f"missing field {k!r} (give either a graph or raw cochain data)")
    dims = doc["dims"]
    _expect(isinstance(dims, list) and 1 <= len(dims) <= 3 and all(isinstance(d, int) and d >= 0 for d in dims), loc, ["dims"], "expected 1 to 3 nonnegative integers")
    cob = doc["coboundaries"]
    _expect(isinstance(cob, list) and len(cob) == len(dims) - 1, loc, ["coboundaries"], f"expected {len(dims) - 1} matrices")
    endo = doc["endo"]
    _expect(isinstance(endo, list) and len(endo) == len(dims), loc, ["endo"], f"expected {len(dims)} matrices")
    deltas = tuple(_int_matrix(m, loc, ["coboundaries"], (dims[k + 1], dims[k])) for k, m in enumerate(cob))
    maps = tuple(_int_matrix(m, loc, ["endo"], (d, d)) for d, m in zip(dims, endo))
    labels = doc.get("labels", [])
    _expect(isinstance(labels, list) and all(isinstance(x, list) for x in labels), loc, ["labels"], "expected a list of name lists")
    return CochainSystem(tuple(dims), deltas, maps, tuple(tuple(map(str, x)) for x in labels))


def parse_input(document: str | dict) -> JobSpec:
    """Validate a JSON document (text or already-parsed object) into a job."""
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
        loc = _Locator(document)
    else:
        doc = document
        loc = _Locator(None)
    _expect(isinstance(doc, dict), loc, [], "top level must be a JSON object")
    if "schema" in doc:
        _expect(doc["schema"] == SCHEMA_VERSION, loc, ["schema"], f"unsupported schema version {doc['schema']!r}")
    mode = doc.get("mode")
    _expect(mode in MODE_KEYS, loc, ["mode"], f"mode must be one of {sorted(MODE_KEYS)}")
    unknown = sorted(set(doc) - COMMON_KEYS - MODE_KEYS[mode])
    _expect(not unknown, loc, unknown[:1], "unknown field")
    name = doc.get("name")
    _expect(name is None or isinstance(name, str), loc, ["name"], "expected a string")
    try:
        if mode == "subst1d":
            payload, lengths, patches = _parse_subst1d(doc, loc)
            return JobSpec(mode, payload, name=name, lengths=lengths, patches=patches)
        if mode == "subst2d":
            return JobSpec(mode, _parse_subst2d(doc, loc), name=name)
        return JobSpec(mode, _parse_complex(doc, loc), name=name)
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError(f"{loc()}{exc}") from None


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    record: dict
    lines: list[str]

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.record, sort_keys=True, indent=2) + "\n"
        return "\n".join(self.lines) + "\n"


def _describe_input(job: JobSpec) -> tuple[dict, str]:
    p = job.payload
    if job.mode == "subst1d":
        return {"mode": "subst1d", **p.to_record()}, f"subst1d {p}"
    if job.mode == "subst2d":
        return {"mode": "subst2d", **p.to_record()}, f"subst2d {p.block_size}x{p.block_size} over {', '.join(p.alphabet)}"
    return {"mode": "complex", "dims": list(p.dims)}, f"complex with cell counts {list(p.dims)}"


def _result_record(res: CohomologyResult, diagnostic_only: bool) -> dict:
    return {
        "diagnostic_only": diagnostic_only,
        "cell_counts": list(res.system.dims),
        "euler": res.euler,
        "degrees": [
            {
                "degree": d.degree,
                "approximant": str(d.group),
                "induced_map": d.induced_map.to_lists(),
                "cech": d.cech.to_record(),
            }
            for d in res.degrees
        ],
    }


def _result_lines(label: str, res: CohomologyResult, diagnostic_only: bool) -> list[str]:
    tag = f" [{DIAGNOSTIC_ONLY}]" if diagnostic_only else ""
    out = [f"pipeline {label}: cells {list(res.system.dims)}{tag}"]
    for d in res.degrees:
        out.append(f"  H^{d.degree}: {d.cech}")
        out.append(f"    approximant H^{d.degree}: {d.group}")
        for note in d.cech.scaling_note:
            out.append(f"    note: {note}")
    return out


def _pipelines(job: JobSpec) -> tuple[list[tuple[str, CohomologyResult, bool]], list[str]]:
    """Run the pipelines requested by the options: ``(label, result, diagnostic_only)``."""
    opt = job.options
    warnings: list[str] = []
    out = []
    if job.mode == "subst1d":
        s = job.payload
        warnings += preflight(s)
        pipeline = opt.pipeline or "both"
        if pipeline in ("bd", "both"):
            out.append(("bd", complex_cohomology(build_bd(s).system), False))
        if pipeline in ("ap", "both"):
            label = "ap-collared" if opt.collared else "ap-uncollared"
            out.append((label, complex_cohomology(build_ap(s, opt.collared).system), not opt.collared))
    elif job.mode == "subst2d":
        s = job.payload
        if opt.pipeline not in (None, "ap"):
            raise ValidationError("the BD pipeline is only available for 1D substitutions; use --pipeline ap")
        if not s.primitive():
            warnings.append("substitution matrix is not primitive")
        label = "ap-collared" if opt.collared else "ap-uncollared"
        out.append((label, complex_cohomology(build_ap2d(s, opt.collared).system), not opt.collared))
    else:
        if opt.pipeline not in (None,):
            raise ValidationError("pipelines apply to substitutions; a complex is computed directly")
        out.append(("complex", complex_cohomology(job.payload), False))
    return out, warnings


def _verdict(results) -> tuple[str, bool]:
    """Agreement line and whether a disagreement is a hard error."""
    if len(results) < 2:
        return "SINGLE", False
    (_, a, da), (_, b, db) = results
    agree = results_agree(a, b)
    if agree:
        return "AGREE", False
    if da or db:
        return "DISAGREE (uncollared pipeline is diagnostic only)", False
    return "DISAGREE", True


def cmd_cohomology(job: JobSpec) -> Report:
    inp, desc = _describe_input(job)
    results, warnings = _pipelines(job)
    verdict, fatal = _verdict(results)
    if fatal:
        detail = "; ".join(f"{lab}: {r.cech_strings()}" for lab, r, _ in results)
        raise PipelineDisagreement(detail)
    lines = [f"input: {desc}"]
    for lab, res, diag in results:
        lines += _result_lines(lab, res, diag)
    lines.append(f"pipelines: {verdict}")
    lines += [f"warning: {w}" for w in warnings]
    record = {
        "schema": SCHEMA_VERSION,
        "command": "cohomology",
        "input": inp,
        "pipelines": {lab: _result_record(res, diag) for lab, res, diag in results},
        "agreement": verdict,
        "warnings": warnings,
    }
    if job.name:
        record["name"] = job.name
    return Report(record, lines)


def _need_1d(job: JobSpec, what: str) -> Substitution1D:
    if job.mode != "subst1d":
        raise ValidationError(f"{what} needs a subst1d input")
    return job.payload


def cmd_frequencies(job: JobSpec) -> Report:
    s = _need_1d(job, "frequencies")
    lengths = job.options.lengths or job.lengths
    try:
        rep = frequencies(s, lengths)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    lines = [f"input: subst1d {s}", f"perron eigenvalue: {rep.perron!r}"]
    for a, ln, fr in zip(rep.alphabet, rep.tile_lengths, rep.tile_freqs):
        lines.append(f"  {a}: length {ln!r}, frequency {fr!r}")
    lines.append("generator traces: " + ", ".join(repr(t) for t in rep.trace_values))
    lines += [f"warning: {w}" for w in rep.warnings]
    return Report({"schema": SCHEMA_VERSION, "command": "frequencies", "input": _describe_input(job)[0], "frequencies": rep.to_record()}, lines)


def cmd_deform(job: JobSpec) -> Report:
    results, warnings = _pipelines(replace(job, options=replace(job.options, pipeline=None if job.mode != "subst1d" else "ap")))
    _, res, diag = results[0]
    d = job.options.dim or (2 if job.mode == "subst2d" else 1)
    rep = deformations(res, d)
    lines = [f"input: {_describe_input(job)[1]}", f"H^1: {res[1].cech}", "spectrum:"]
    for z, m in rep.spectrum:
        val = repr(z.real) if abs(z.imag) < 1e-300 else f"{z.real!r}{z.imag:+.17g}i"
        lines.append(f"  {val} (modulus {abs(z)!r}, multiplicity {m})")
    lines.append(f"asymptotically negligible dimension: {rep.an_dimension}")
    lines.append(f"pisot: {str(rep.pisot).lower()}")
    if diag:
        lines.append(f"warning: {DIAGNOSTIC_ONLY}")
    lines += [f"warning: {w}" for w in warnings]
    return Report({"schema": SCHEMA_VERSION, "command": "deform", "input": _describe_input(job)[0], "deformations": rep.to_record(), "diagnostic_only": diag}, lines)


def cmd_regularity(job: JobSpec) -> Report:
    s = _need_1d(job, "regularity")
    patches = tuple(tuple(p) for p in job.options.patches) or job.patches
    if not patches:
        raise ValidationError("give patches with --patch or a 'patches' field")
    try:
        rep = exact_regularity(s, patches)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    verdict = regularity_empirical_check(s, rep, job.options.depth)
    lines = [f"input: subst1d {s}", "basis: " + ", ".join(f"[i_{word_str(p)}]" for p in rep.basis_patches)]
    for p, cf in zip(rep.patches, rep.coefficients):
        lines.append(f"  [i_{word_str(p)}] = ({', '.join(str(x) for x in cf)})")
    lines.append(f"integral: {str(rep.integral).lower()}")
    lines.append(f"empirical check at depth {verdict.depth}: {'pass' if verdict.passed else 'FAIL'} on {verdict.regions} regions")
    if verdict.counterexample:
        lines.append(f"  counterexample: {json.dumps(verdict.counterexample, sort_keys=True)}")
    return Report(
        {"schema": SCHEMA_VERSION, "command": "regularity", "input": _describe_input(job)[0], "regularity": rep.to_record(), "empirical": verdict.to_record()},
        lines,
    )


def cmd_diagnose(job: JobSpec) -> Report:
    s = _need_1d(job, "diagnose")
    bd = build_bd(s)
    res = complex_cohomology(bd.system)
    diag = bd_diagnostics(bd, res[1].cech)
    if not diag.consistent:
        raise AssertionError(f"exact sequence rank bookkeeping fails: {diag.sequence_report()}")
    lines = [
        f"input: subst1d {s}",
        f"tile cells: {len(bd.tile_cells)}, vertex flaps: {len(bd.flaps)}, vertices: {len(bd.vertices)}",
        "S0ER: " + " ".join(word_str(f) for f in diag.s0er),
        "S0ER with transient flaps: " + " ".join(word_str(f) for f in diag.s0er_with_transients),
        f"k = {diag.k}, ell = {diag.ell}",
        f"sequence: {diag.sequence_report()}",
        f"H^1: {res[1].cech}",
    ]
    return Report({"schema": SCHEMA_VERSION, "command": "diagnose", "input": _describe_input(job)[0], "diagnostics": diag.to_record(), "H1": res[1].cech.to_record()}, lines)


COMMANDS = {
    "cohomology": cmd_cohomology,
    "frequencies": cmd_frequencies,
    "deform": cmd_deform,
    "regularity": cmd_regularity,
    "diagnose": cmd_diagnose,
}


def run(job: JobSpec, command: str = "cohomology") -> Report:
    return COMMANDS[command](job)


# ---------------------------------------------------------------------------
# entry point


def _parse_lengths(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"--lengths expects comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tilecoh", description="Cech cohomology of substitution tiling spaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("input", nargs="?", help="JSON input file, or - for standard input")
        src.add_argument("--example", choices=catalog.names(), help="use a built-in example instead of a file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", "-o", help="write the report here instead of standard output")
        if name == "cohomology":
            p.add_argument("--pipeline", choices=("bd", "ap", "both"))
            p.add_argument("--uncollared", action="store_true", help="skip collaring (diagnostic only)")
        if name == "frequencies":
            p.add_argument("--lengths", help="comma-separated tile lengths in alphabet order")
        if name == "deform":
            p.add_argument("--dim", type=int, help="dimension of the deformation vectors")
            p.add_argument("--uncollared", action="store_true", help="skip collaring (diagnostic only)")
        if name == "regularity":
            p.add_argument("--patch", action="append", default=[], help="patch word (repeatable)")
            p.add_argument("--depth", type=int, default=12, help="substitution depth for the empirical check")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.example:
            job = parse_input(catalog.example_document(args.example))
        else:
            if args.input == "-":
                text = sys.stdin.read()
            else:
                try:
                    with open(args.input, encoding="utf-8") as fh:
                        text = fh.read()
                except OSError as exc:
                    raise ValidationError(f"cannot read {args.input}: {exc.strerror}") from None
            job = parse_input(text)
        opts = Options(
            pipeline=getattr(args, "pipeline", None),
            collared=not getattr(args, "uncollared", False),
            format=args.format,
            output=args.output,
            dim=getattr(args, "dim", None),
            depth=getattr(args, "depth", 12),
            patches=tuple(getattr(args, "patch", [])),
            lengths=_parse_lengths(args.lengths) if getattr(args, "lengths", None) else None,
        )
        job = replace(job, options=opts)
        text_out = run(job, args.command).render(args.format)
    except (ValidationError, InvalidSystemError, InsufficientDataError) as exc:
        print(f"tilecoh: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PipelineDisagreement as exc:
        print(f"tilecoh: pipeline disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except Exception as exc:  # pragma: no cover - reached only through bugs
        print(f"tilecoh: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text_out)
    else:
        sys.stdout.write(text_out)
    return EXIT_OK
