"""Command-line entry point.

Every command writes its results under the output directory and prints a
short summary on stdout; logs go to stderr.

Usage:
    gasket-spectra spectrum --level 3 --bc dirichlet --method both
    gasket-spectra verify --suite all --max-level 5
    gasket-spectra tables --which dirichlet-m4

Exit codes:
    0  success
    1  golden table or oracle mismatch
    2  usage, configuration, domain or size-limit error
    3  theory violation, exactness, internal consistency or reconstruction failure
"""

import sys
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional

import typer

from src import __version__
from src.core.config import RunConfig, load_config_file, settings
from src.core.exceptions import (
    ConfigError,
    DomainError,
    GoldenMismatchError,
    SizeLimitError,
    SpectraException,
)
from src.models.schemas import CheckResult, ConjectureRow, CountingRow, EigenvalueRow, OracleRow
from src.observability.logging import get_logger, setup_logging
from src.observability.metrics import metrics
from src.services.assembly import SpectrumTable, assemble, compare_with_oracle, oracle_spectrum
from src.services.assembly.assembler import verify_ledgers, verify_oracle
from src.services.counting import (
    CountingDomain,
    counting_gap_experiment,
    rho,
    run_conjectures,
    weyl_ratio,
)
from src.services.graphs import GraphKind, build_graph, to_export
from src.services.oracle import BoundaryCondition
from src.services.primitive import (
    FamilyName,
    build_family,
    isolate_family_roots,
    verify_interlacing,
    verify_sign_theorems,
)
from src.services.reporting import (
    TABLES,
    check_golden,
    csv_text,
    golden_path,
    render_table,
    summary,
    tsv_text,
    write_lines,
    write_model,
    write_models,
    write_text,
)

logger = get_logger(__name__)

app = typer.Typer(
    name="gasket-spectra",
    help="Dirichlet and Neumann spectra of the gasket without its bottom edge.",
    no_args_is_help=True,
    add_completion=False,
)


class Method(str, Enum):
    CLASSIFY = "classify"
    ORACLE = "oracle"
    BOTH = "both"


class Suite(str, Enum):
    SIGNS = "signs"
    INTERLACING = "interlacing"
    LEDGERS = "ledgers"
    ORACLE = "oracle"
    ALL = "all"


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

TableName = Enum("TableName", {name: name for name in [*TABLES, "all"]}, type=str)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Translate spectra exceptions into the documented exit codes."""
    try:
        yield
    except GoldenMismatchError as exc:
        typer.echo(f"error: {exc.message}", err=True)
        for line in exc.differences[:20]:
            typer.echo(f"  {line}", err=True)
        raise typer.Exit(1)
    except (ConfigError, DomainError, SizeLimitError) as exc:
        typer.echo(f"error: {exc.message}", err=True)
        raise typer.Exit(2)
    except SpectraException as exc:
        typer.echo(f"error [{exc.code}]: {exc.message}", err=True)
        raise typer.Exit(3)


def _write_metrics() -> None:
    if settings.METRICS_ENABLED and settings.METRICS_FILE:
        metrics.write(settings.METRICS_FILE)


@app.callback()
def main(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(None, "--config", help="YAML or key=value config file"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", "-o"),
    fmt: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    max_level: Optional[int] = typer.Option(None, "--max-graph-level", help="Largest graph level"),
    tol_root: Optional[float] = typer.Option(None, "--tol-root"),
    tol_oracle: Optional[float] = typer.Option(None, "--tol-oracle"),
    oracle_method: Optional[str] = typer.Option(None, "--oracle-method", help="jacobi or lapack"),
    golden_dir: Optional[Path] = typer.Option(None, "--golden-dir"),
    log_level: Optional[str] = typer.Option(None, "--log-level"),
) -> None:
    """Resolve the run configuration: settings, then config file, then flags."""
    if log_level is not None and log_level.upper() not in LOG_LEVELS:
        raise typer.BadParameter(f"unknown log level {log_level}", param_hint="--log-level")
    setup_logging(level=log_level, stream=sys.stderr)
    with exit_codes():
        cfg = RunConfig.from_settings()
        if config is not None:
            cfg = cfg.merged(load_config_file(config))
        cfg = cfg.merged(
            {
                "output_dir": output_dir,
                "format": fmt,
                "max_level": max_level,
                "tol_root": tol_root,
                "tol_oracle": tol_oracle,
                "oracle_method": oracle_method,
                "golden_dir": golden_dir,
            }
        )
        cfg.apply()
    metrics.set_app_info(__version__, cfg.oracle_method)
    ctx.obj = cfg
    ctx.call_on_close(_write_metrics)


def _cfg(ctx: typer.Context) -> RunConfig:
    return ctx.obj


@app.command()
def graph(
    ctx: typer.Context,
    level: int = typer.Option(..., "--level", "-m"),
    kind: GraphKind = typer.Option(GraphKind.OMEGA, "--kind"),
) -> None:
    """Write the level-m graph as JSON."""
    cfg = _cfg(ctx)
    with exit_codes():
        g = build_graph(kind, level, cfg.max_graph_level)
        path = write_model(cfg.output_dir / f"graph_{kind.value}_m{level}.json", to_export(g))
    typer.echo(f"{kind.value} m={level}: {len(g)} vertices, {len(g.edges)} edges -> {path}")


def _classified(level: int, bc: BoundaryCondition) -> SpectrumTable:
    if bc is BoundaryCondition.DIRICHLET and level == 1:
        return SpectrumTable(level=1, bc=bc, records=())
    return assemble(level, bc)


@app.command()
def spectrum(
    ctx: typer.Context,
    level: int = typer.Option(..., "--level", "-m"),
    bc: BoundaryCondition = typer.Option(BoundaryCondition.DIRICHLET, "--bc"),
    method: Method = typer.Option(Method.CLASSIFY, "--method"),
) -> None:
    """Classified and/or eigensolver spectrum of the domain graph."""
    cfg = _cfg(ctx)
    out = cfg.output_dir
    stem = f"{bc.value}_m{level}"
    with exit_codes():
        if level > cfg.max_graph_level:
            raise SizeLimitError("graph", level, cfg.max_graph_level)
        table = oracle = None
        if method in (Method.CLASSIFY, Method.BOTH):
            table = _classified(level, bc)
            if cfg.format == "json":
                write_model(out / f"spectrum_{stem}.json", table.export())
            else:
                write_models(out / f"spectrum_{stem}", EigenvalueRow, table.rows())
            typer.echo(f"classified {bc.value} m={level}: {table.dimension} dimensions")
        if method in (Method.ORACLE, Method.BOTH):
            oracle = oracle_spectrum(level, bc, cfg.oracle_method)
            write_models(out / f"oracle_{stem}", OracleRow, oracle.rows(level, bc.value), cfg.format)
            typer.echo(f"oracle {bc.value} m={level}: {oracle.dimension} dimensions")

    if table is not None and oracle is not None:
        result = compare_with_oracle(table, oracle, cfg.tol_oracle)
        lines = [
            f"classified {result.classified} oracle {result.oracle}",
            f"max deviation {result.max_deviation:.3e}",
            *result.mismatches,
        ]
        write_lines(out / f"diff_{stem}.txt", lines)
        if not result.passed:
            typer.echo(f"oracle mismatch: {len(result.mismatches)} difference(s)", err=True)
            raise typer.Exit(1)
        typer.echo("diff empty")


def _suites(cfg: RunConfig) -> Dict[str, Callable[[int], List[CheckResult]]]:
    return {
        Suite.SIGNS.value: verify_sign_theorems,
        Suite.INTERLACING.value: verify_interlacing,
        Suite.LEDGERS.value: verify_ledgers,
        Suite.ORACLE.value: lambda m: verify_oracle(m, cfg.oracle_method),
    }


@app.command()
def verify(
    ctx: typer.Context,
    suite: Suite = typer.Option(Suite.ALL, "--suite"),
    max_level: int = typer.Option(5, "--max-level"),
) -> None:
    """Run invariant suites; exit 3 on any failure."""
    cfg = _cfg(ctx)
    suites = _suites(cfg)
    names = list(suites) if suite is Suite.ALL else [suite.value]
    checks: List[CheckResult] = []
    with exit_codes():
        for name in names:
            checks.extend(suites[name](max_level))
    lines = [c.line() for c in checks]
    write_lines(cfg.output_dir / f"verify_{suite.value}.txt", lines)
    for line in lines:
        typer.echo(line)
    failures = [c for c in checks if not c.passed]
    typer.echo(f"{len(checks) - len(failures)}/{len(checks)} checks passed")
    if failures:
        raise typer.Exit(3)


@app.command()
def tables(
    ctx: typer.Context,
    which: TableName = typer.Option(..., "--which"),
    update_golden: bool = typer.Option(False, "--update-golden", help="Overwrite the golden file"),
) -> None:
    """Regenerate a table and diff it against its golden file."""
    cfg = _cfg(ctx)
    names = list(TABLES) if which.value == "all" else [which.value]
    with exit_codes():
        for name in names:
            text = render_table(name)
            write_text(cfg.output_dir / TABLES[name].golden_name, text)
            if update_golden:
                write_text(golden_path(cfg.golden_dir, name), text)
            else:
                check_golden(name, text, cfg.golden_dir)
            typer.echo(summary(name, text))


@app.command()
def count(
    ctx: typer.Context,
    x_max: float = typer.Option(..., "--x-max"),
    level_cap: Optional[int] = typer.Option(None, "--level-cap"),
) -> None:
    """Counting functions of the gasket and the domain up to x_max."""
    cfg = _cfg(ctx)
    out = cfg.output_dir
    with exit_codes():
        experiment = counting_gap_experiment(x_max, level_cap)
        sg = rho(CountingDomain.SG, x_max, level_cap)
        omega = rho(CountingDomain.OMEGA, x_max, level_cap)
    write_models(out / "counting", CountingRow, list(experiment.rows), cfg.format)
    for name, result in (("sg", sg), ("omega", omega)):
        rows = [(f"{t:.9f}", f"{g:.9f}") for t, g in weyl_ratio(result.total)]
        write_text(out / f"weyl_{name}.tsv", tsv_text(("log_x", "ratio"), rows))
    parts = {
        name: [(x, n) for x, n in fn.breakpoints] for name, fn in omega.parts.items()
    }
    write_text(
        out / "counting_parts.csv",
        csv_text(
            ("type", "x", "count"),
            [(name, f"{x:.9f}", n) for name, points in parts.items() for x, n in points],
        ),
    )

    typer.echo(f"rho_sg({x_max:g}) = {sg.total(x_max)}")
    typer.echo(f"rho_omega({x_max:g}) = {omega.total(x_max)}")
    typer.echo(f"certified below {omega.total.certified_below:.1f}")
    typer.echo(f"difference nonnegative: {'yes' if experiment.nonnegative else 'no'}")
    sup = experiment.sup_normalized
    if sup is not None:
        typer.echo(f"sup normalized difference {sup:.4f}")
        typer.echo(f"dyadic windows bounded: {'yes' if experiment.bounded else 'no'}")


@app.command()
def conjectures(
    ctx: typer.Context,
    m_max: int = typer.Option(5, "--m-max"),
) -> None:
    """Low-count, gap, cluster and alternation experiments up to m_max."""
    cfg = _cfg(ctx)
    with exit_codes():
        if m_max > cfg.max_poly_level:
            raise SizeLimitError("polynomial", m_max, cfg.max_poly_level)
        report = run_conjectures(m_max)
    write_models(cfg.output_dir / "conjectures", ConjectureRow, report.low_counts, cfg.format)
    lines = [c.line().replace(" OK", " PASS") for c in report.checks()]
    write_lines(cfg.output_dir / "conjectures.txt", lines)
    for line in lines:
        typer.echo(line)


@app.command()
def poly(
    ctx: typer.Context,
    family: FamilyName = typer.Option(..., "--family"),
    level: int = typer.Option(..., "--level", "-m"),
) -> None:
    """Dump the coefficients of one family member."""
    cfg = _cfg(ctx)
    with exit_codes():
        fam = build_family(family, level, cfg.max_poly_level)
    header = f"family={family.value} level={level} degree={fam.degree}"
    path = write_lines(
        cfg.output_dir / f"poly_{family.value}_m{level}.txt",
        list(fam.poly.dump_lines(header=header)),
    )
    typer.echo(f"{family.value}_{level}: degree {fam.degree} -> {path}")


@app.command()
def roots(
    ctx: typer.Context,
    family: FamilyName = typer.Option(..., "--family"),
    level: int = typer.Option(..., "--level", "-m"),
) -> None:
    """Isolate and refine the roots of one family member in [0, 6]."""
    cfg = _cfg(ctx)
    with exit_codes():
        if level > cfg.max_poly_level:
            raise SizeLimitError("polynomial", level, cfg.max_poly_level)
        table = isolate_family_roots(family, level, cfg.tol_root)
    rows = [
        (
            family.value,
            level,
            r.index,
            f"{r.value:.12f}",
            str(r.interval.lo),
            str(r.interval.hi),
            r.bracket,
        )
        for r in table.roots
    ]
    path = write_text(
        cfg.output_dir / f"roots_{family.value}_m{level}.csv",
        csv_text(("family", "level", "index", "value", "lo", "hi", "bracket"), rows),
    )
    typer.echo(f"{family.value}_{level}: {len(table)} roots ({table.method}) -> {path}")


if __name__ == "__main__":
    app()
