# Command-line entry point

"""Command-line surface for aglmobius.

Commands: mu, table, subgroups, verify, designs, eulerian, supergroups.
Results go to stdout in a deterministic order; logs go to stderr. Errors
map to exit codes 1 (usage/validation), 2 (domain) and 3 (I/O).
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
import uuid
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from . import config
from .agl_mobius import explain_mu, mu_table_oracle
from .cache import get_catalog, get_table
from .designs import (
    count_generating_tuples, design_parameters, design_scan, eulerian_phi, eulerian_probability,
)
from .errors import AglMobiusError, ParseError
from .gf import FieldSpec, build_field, parse_element
from .number_utils import prime_power_decompose
from .schemas import (
    EulerianResult, MuResult, RunConfig, SupergroupsDump, catalog_records, design_report_dump,
    mu_entry, mu_table_dump, subgroup_record,
)
from .subgroups import (
    GroupCatalog, Subgroup, full_group, immediate_supergroups, make_subgroup, maximal_subgroups,
    trivial_subgroup,
)
from .submodules import Submodule
from .verification import run_verification


def _configure_logger(level_name: Optional[str] = None) -> logging.Logger:
    """Configure the application logger; stdout is reserved for results."""
    level_name = (level_name or config.LOG_LEVEL or "WARNING").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logger = logging.getLogger("aglmobius")
    formatter = logging.Formatter("%(asctime)s | %(levelname)s | %(name)s | %(message)s")
    for handler in list(logger.handlers):
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            logger.removeHandler(handler)
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    if config.LOG_TO_FILE and not any(isinstance(h, logging.FileHandler) for h in logger.handlers):
        logs_dir = Path(__file__).parent.parent / "logs"
        logs_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(logs_dir / "aglmobius.log", encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.setLevel(level)
    logger.propagate = False
    return logger


logger = logging.getLogger("aglmobius")


def _log_phase(run_id: str, phase: int, title: str, detail: str, context: Optional[Dict[str, Any]] = None):
    """Emit a structured phase log with an optional context payload."""
    suffix = f" | context={context}" if context else ""
    logger.info("[run:%s] Phase %d - %s: %s%s", run_id, phase, title, detail, suffix)


# ============================================================================
# Argument parsing
# ============================================================================

def _add_field_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, help="field size q = p^n")
    parser.add_argument("--p", type=int, help="characteristic (with --n)")
    parser.add_argument("--n", type=int, help="extension degree (with --p)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    common.add_argument("--log-level", help="explicit log level (overrides -v)")
    common.add_argument("--cache", dest="use_cache", action="store_true", help="reuse cached catalogs and tables")
    common.add_argument("--no-cache", dest="use_cache", action="store_false")
    common.add_argument("--cache-dir", help="cache directory (default: $AGL_CACHE_DIR)")
    common.add_argument("--jobs", type=int, default=config.JOBS, help="worker processes for table construction")
    common.add_argument("--oracle-cap", type=int, default=config.ORACLE_MAX_SUBGROUPS,
                        help="largest catalog the recursive oracle accepts")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output_format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="output_format", action="store_const", const="csv")
    common.set_defaults(output_format="table", use_cache=False)

    parser = argparse.ArgumentParser(
        prog=config.APP_NAME,
        description="Moebius function of the subgroup lattice of AGL(1, F_q).",
    )
    parser.add_argument("--version", action="version", version=f"{config.APP_NAME} {config.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mu = sub.add_parser("mu", parents=[common], help="mu(S1, S2) from the closed formula")
    _add_field_args(p_mu)
    p_mu.add_argument("--s1", required=True, help='subgroup descriptor, e.g. "d=2;b=0;H=[]", "i=3" or "trivial"')
    p_mu.add_argument("--s2", required=True, help="subgroup descriptor")
    p_mu.add_argument("--explain", action="store_true", help="print the formula branch and its factors")

    p_table = sub.add_parser("table", parents=[common], help="mu over all comparable pairs")
    _add_field_args(p_table)
    p_table.add_argument("--oracle", action="store_true", help="use the recursive oracle instead of the formula")

    p_sub = sub.add_parser("subgroups", parents=[common], help="list the subgroup catalog")
    _add_field_args(p_sub)

    p_verify = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p_verify.add_argument("--q", dest="q_values", nargs="+", required=True,
                          help="field sizes (space or comma separated)")
    p_verify.add_argument("--level", choices=["fast", "full"], default="full")

    p_designs = sub.add_parser("designs", parents=[common], help="2-design parameter scan")
    _add_field_args(p_designs)
    p_designs.add_argument("--k-min", type=int, default=2)
    p_designs.add_argument("--k-max", type=int)

    p_euler = sub.add_parser("eulerian", parents=[common], help="number of generating m-tuples")
    _add_field_args(p_euler)
    p_euler.add_argument("--m", type=int, default=2)
    p_euler.add_argument("--check", action="store_true", help="also count by brute force")

    p_super = sub.add_parser("supergroups", parents=[common], help="immediate supergroups and maximal subgroups")
    _add_field_args(p_super)
    p_super.add_argument("--subgroup", required=True, help="subgroup descriptor")

    return parser


def _resolve_field(args: argparse.Namespace) -> FieldSpec:
    if args.q is not None:
        p, n = prime_power_decompose(args.q)
        if (args.p is not None and args.p != p) or (args.n is not None and args.n != n):
            raise ParseError(f"--q {args.q} disagrees with --p/--n")
        return build_field(p, n)
    if args.p is None or args.n is None:
        raise ParseError("give --q or both --p and --n")
    return build_field(args.p, args.n)


def _run_config(args: argparse.Namespace, spec: Optional[FieldSpec]) -> RunConfig:
    try:
        return RunConfig(
            command=args.command,
            p=spec.p if spec else None,
            n=spec.n if spec else None,
            q=spec.q if spec else None,
            output_format=args.output_format,
            cache_dir=args.cache_dir,
            use_cache=args.use_cache,
            oracle_cap=args.oracle_cap,
            jobs=args.jobs,
            verbosity=args.verbose,
        )
    except ValidationError as e:
        raise ParseError(f"invalid options: {e.errors()[0]['msg']}") from e


# ============================================================================
# Subgroup descriptors
# ============================================================================

def _parse_submodule(spec: FieldSpec, text: str) -> Submodule:
    s = text.strip()
    if s in ("", "[]", "0"):
        return Submodule.zero(spec)
    if s == "F":
        return Submodule.whole(spec)
    try:
        rows = json.loads(s)
    except ValueError as e:
        raise ParseError(f"invalid H '{text}': {e}") from e
    if not isinstance(rows, list):
        raise ParseError(f"H must be a list of basis vectors: '{text}'")
    vectors = []
    for row in rows:
        if isinstance(row, str):
            vectors.append(parse_element(spec, row))
        elif isinstance(row, list) and len(row) == spec.n and all(isinstance(c, int) for c in row):
            vectors.append(spec.element(row))
        else:
            raise ParseError(f"basis vector {row!r} must be an element or {spec.n} integers")
    return Submodule.span(spec, vectors)


def parse_descriptor(text: str, catalog: GroupCatalog) -> Subgroup:
    """Parse "d=<d>;b=<elem>;H=<basis>", "i=<index>", "trivial" or "full".

    b defaults to 0 and H to the zero submodule.

    Raises:
        ParseError: If the descriptor is malformed or the index is out of range.
    """
    spec = catalog.spec
    s = text.strip()
    if s == "trivial":
        return trivial_subgroup(spec)
    if s == "full":
        return full_group(spec)
    fields: Dict[str, str] = {}
    for part in s.split(";"):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"descriptor part '{part}' is not key=value")
        fields[key.strip()] = value.strip()
    if set(fields) == {"i"}:
        try:
            index = int(fields["i"])
        except ValueError as e:
            raise ParseError(f"invalid catalog index '{fields['i']}'") from e
        if not 0 <= index < len(catalog):
            raise ParseError(f"catalog index {index} is outside 0..{len(catalog) - 1}")
        return catalog[index]
    unknown = set(fields) - {"d", "b", "H"}
    if unknown or "d" not in fields:
        raise ParseError(f"descriptor '{text}' needs d and only d, b, H keys")
    try:
        d = int(fields["d"])
    except ValueError as e:
        raise ParseError(f"invalid d '{fields['d']}'") from e
    b = parse_element(spec, fields.get("b", "0"))
    H = _parse_submodule(spec, fields.get("H", "[]"))
    return make_subgroup(spec, d, b, H)


# ============================================================================
# Rendering
# ============================================================================

def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def _basis_text(record) -> str:
    return json.dumps(record.H.basis, separators=(",", ":"))


def _render_subgroups(catalog: GroupCatalog, fmt: str) -> str:
    records = catalog_records(catalog)
    if fmt == "json":
        return json.dumps([r.model_dump() for r in records], indent=2)
    rows = [(r.index, r.d, r.b, r.H.dim_p, _basis_text(r), r.order) for r in records]
    if fmt == "csv":
        return _csv(("index", "d", "b", "dim_p", "H", "order"), rows)
    lines = [f"q={catalog.spec.q}: {len(records)} subgroups"]
    lines += [f"{i:>5}  d={d:<4} b={b:<6} dim={dim:<2} order={order:<6} H={basis}"
              for i, d, b, dim, basis, order in rows]
    return "\n".join(lines)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# ============================================================================
# Commands
# ============================================================================

def _load(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> GroupCatalog:
    t0 = time.perf_counter()
    catalog = get_catalog(spec, run.cache_dir, run.use_cache)
    _log_phase(run_id, 1, "Catalog", f"{len(catalog)} subgroups", {"q": spec.q, "elapsed": round(time.perf_counter() - t0, 3)})
    return catalog


def cmd_mu(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> int:
    catalog = _load(args, run, spec, run_id)
    S1 = parse_descriptor(args.s1, catalog)
    S2 = parse_descriptor(args.s2, catalog)
    explanation = explain_mu(S1, S2)
    _log_phase(run_id, 2, "Mu", f"branch {explanation.branch}", explanation.factors)
    if run.output_format == "json":
        result = MuResult(
            q=spec.q, S1=subgroup_record(S1, catalog.index_of(S1)), S2=subgroup_record(S2, catalog.index_of(S2)),
            mu=explanation.value, branch=explanation.branch, explanation=explanation.describe(),
            factors=explanation.factors,
        )
        _emit(result.model_dump_json(indent=2))
    elif run.output_format == "csv":
        _emit(_csv(("i", "j", "mu", "branch"),
                   [(catalog.index_of(S1), catalog.index_of(S2), explanation.value, explanation.branch)]))
    else:
        _emit(str(explanation.value))
        if args.explain:
            _emit(explanation.describe())
    return 0


def cmd_table(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> int:
    catalog = _load(args, run, spec, run_id)
    if args.oracle:
        table = mu_table_oracle(catalog, cap=run.oracle_cap)
    else:
        table = get_table(catalog, run.cache_dir, run.use_cache, jobs=run.jobs)
    _log_phase(run_id, 2, "Table", f"{len(table.mu)} comparable pairs", {"source": table.source})
    if run.output_format == "json":
        _emit(mu_table_dump(table).model_dump_json(indent=2))
        return 0
    entries = [mu_entry(catalog, i, j, v) for i, j, v in table.entries()]
    if run.output_format == "csv":
        _emit(_csv(("i", "j", "d1", "d2", "dimH1", "dimH2", "mu"),
                   [(e.i, e.j, e.d1, e.d2, e.dimH1, e.dimH2, e.mu) for e in entries]))
        return 0
    lines = [f"q={spec.q}: {len(catalog)} subgroups, {len(entries)} comparable pairs ({table.source})"]
    lines += [f"{e.i:>5} {e.j:>5}  mu={e.mu}" for e in entries]
    _emit("\n".join(lines))
    return 0


def cmd_subgroups(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> int:
    catalog = _load(args, run, spec, run_id)
    _emit(_render_subgroups(catalog, run.output_format))
    return 0


def _parse_q_list(values: Sequence[str]) -> List[int]:
    qs: List[int] = []
    for value in values:
        for item in value.split(","):
            if not item.strip():
                continue
            try:
                q = int(item)
            except ValueError as e:
                raise ParseError(f"invalid field size '{item}'") from e
            prime_power_decompose(q)
            qs.append(q)
    if not qs:
        raise ParseError("verify needs at least one q")
    return qs


def cmd_verify(args: argparse.Namespace, run: RunConfig, spec: Optional[FieldSpec], run_id: str) -> int:
    qs = _parse_q_list(args.q_values)
    report = run_verification(qs, level=args.level, jobs=run.jobs, oracle_cap=run.oracle_cap)
    _log_phase(run_id, 2, "Verify", "ok" if report.ok else "mismatch", {"q": qs, "level": args.level})
    if run.output_format == "json":
        _emit(report.model_dump_json(indent=2))
    elif run.output_format == "csv":
        _emit(_csv(("q", "check", "passed", "failed", "skipped"),
                   [(c.q, c.name, c.passed, c.failed, c.skipped) for c in report.checks]))
    else:
        lines = []
        for c in report.checks:
            status = "SKIP" if c.skipped else ("PASS" if c.ok else "FAIL")
            line = f"q={c.q:<4} {c.name:<20} {status}  passed={c.passed} failed={c.failed}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
        lines.append("all checks passed" if report.ok else "verification FAILED")
        _emit("\n".join(lines))
    return 0 if report.ok else 2


def cmd_designs(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> int:
    catalog = _load(args, run, spec, run_id)
    table = get_table(catalog, run.cache_dir, run.use_cache, jobs=run.jobs)
    k_max = spec.q if args.k_max is None else args.k_max
    report = design_scan(catalog, table, range(args.k_min, k_max + 1))
    parameters = design_parameters(report)
    _log_phase(run_id, 2, "Designs", f"{len(parameters)} parameter sets", {"k": [args.k_min, k_max]})
    if run.output_format == "json":
        _emit(design_report_dump(report, parameters).model_dump_json(indent=2))
        return 0
    dump = design_report_dump(report, parameters)
    rows = [(r.subgroup_index, r.order, r.k, r.f_k, r.g_k,
             "" if r.lambda_num is None else r.lambda_num,
             "" if r.lambda_den is None else r.lambda_den,
             "" if r.integral is None else str(r.integral).lower()) for r in dump.rows]
    if run.output_format == "csv":
        _emit(_csv(("subgroup_index", "order", "k", "f_k", "g_k", "lambda_num", "lambda_den", "integral"), rows))
        return 0
    lines = [f"q={spec.q}: realizable 2-({spec.q}, k, lambda) designs"]
    for p in parameters:
        lam = str(p.lam.numerator) if p.lam.denominator == 1 else f"{p.lam.numerator}/{p.lam.denominator}"
        lines.append(f"  k={p.k:<3} lambda={lam:<6} stabilizer orders {list(p.stabilizer_orders)}")
    _emit("\n".join(lines))
    return 0


def cmd_eulerian(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> int:
    catalog = _load(args, run, spec, run_id)
    table = get_table(catalog, run.cache_dir, run.use_cache, jobs=run.jobs)
    phi = eulerian_phi(catalog, table, args.m)
    probability = eulerian_probability(catalog, table, args.m)
    brute = count_generating_tuples(catalog, args.m) if args.check else None
    _log_phase(run_id, 2, "Eulerian", f"phi_{args.m} = {phi}", {"brute_force": brute})
    if run.output_format == "json":
        result = EulerianResult(q=spec.q, m=args.m, phi=phi, probability_num=probability.numerator,
                                probability_den=probability.denominator, brute_force=brute)
        _emit(result.model_dump_json(indent=2))
    elif run.output_format == "csv":
        _emit(_csv(("q", "m", "phi", "probability_num", "probability_den", "brute_force"),
                   [(spec.q, args.m, phi, probability.numerator, probability.denominator,
                     "" if brute is None else brute)]))
    else:
        _emit(str(phi))
        if brute is not None:
            _emit(f"brute force: {brute} ({'match' if brute == phi else 'MISMATCH'})")
    if brute is not None and brute != phi:
        return 2
    return 0


def cmd_supergroups(args: argparse.Namespace, run: RunConfig, spec: FieldSpec, run_id: str) -> int:
    catalog = _load(args, run, spec, run_id)
    S = parse_descriptor(args.subgroup, catalog)
    i = catalog.index_of(S)
    above = [] if i == catalog.top else immediate_supergroups(S, catalog)
    below = maximal_subgroups(S, catalog)
    dump = SupergroupsDump(
        q=spec.q, subgroup=subgroup_record(S, i),
        immediate_supergroups=[subgroup_record(K, catalog.index_of(K)) for K in above],
        maximal_subgroups=[subgroup_record(K, catalog.index_of(K)) for K in below],
    )
    if run.output_format == "json":
        _emit(dump.model_dump_json(indent=2))
        return 0
    rows = [("up", r.index, r.d, r.b, _basis_text(r), r.order) for r in dump.immediate_supergroups]
    rows += [("down", r.index, r.d, r.b, _basis_text(r), r.order) for r in dump.maximal_subgroups]
    if run.output_format == "csv":
        _emit(_csv(("direction", "index", "d", "b", "H", "order"), rows))
        return 0
    lines = [f"subgroup {i}: d={S.d} order={S.order}"]
    lines += [f"  {direction:<4} {idx:>5}  d={d:<4} b={b:<6} order={order:<6} H={basis}"
              for direction, idx, d, b, basis, order in rows]
    _emit("\n".join(lines))
    return 0


COMMANDS = {
    "mu": cmd_mu,
    "table": cmd_table,
    "subgroups": cmd_subgroups,
    "verify": cmd_verify,
    "designs": cmd_designs,
    "eulerian": cmd_eulerian,
    "supergroups": cmd_supergroups,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = args.log_level or {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
    _configure_logger(level)
    run_id = uuid.uuid4().hex[:8]
    try:
        spec = None if args.command == "verify" else _resolve_field(args)
        run = _run_config(args, spec)
        _log_phase(run_id, 0, "Start", f"command {run.command}", {"q": run.q, "format": run.output_format})
        code = COMMANDS[run.command](args, run, spec, run_id)
        _log_phase(run_id, 3, "Done", f"exit {code}")
        return code
    except AglMobiusError as e:
        logger.error("[run:%s] %s: %s", run_id, type(e).__name__, e)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        logger.error("[run:%s] invalid input: %s", run_id, e)
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        logger.error("[run:%s] I/O failure: %s", run_id, e)
        print(f"error: {e}", file=sys.stderr)
        return 3
    except Exception as e:
        logger.exception("[run:%s] unexpected failure", run_id)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
