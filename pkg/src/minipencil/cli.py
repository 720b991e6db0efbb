"""Command-line entry point: parse, fmt, blocks, run, grade, palette, serve.

Exit codes: 0 success, 1 diagnostics reported, 2 usage errors.
"""

import json
import os
import sys
from pathlib import Path

import click

from .adapter import ast_to_blocks, palette_json
from .assessment import CorpusError, grade_directory, load_corpus
from .blocks import to_markup
from .diagnostics import SourceError
from .interpreter import DEFAULT_STEP_LIMIT, ExecError, run as run_program
from .lang import format_program, parse as parse_source


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _report(err: SourceError, path: str):
    for diag in err.diagnostics:
        click.echo(f"{path}:{diag.render()}", err=True)


@click.group()
def cli():
    """Hybrid block/text tooling for MiniPencil (.mp) programs."""


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def parse(file):
    """Syntax-check FILE; diagnostics go to stderr."""
    try:
        parse_source(_read(file))
    except SourceError as err:
        _report(err, file)
        sys.exit(1)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def fmt(file):
    """Write FILE's canonical formatting to stdout."""
    try:
        program = parse_source(_read(file))
    except SourceError as err:
        _report(err, file)
        sys.exit(1)
    click.echo(format_program(program), nl=False)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def blocks(file):
    """Emit FILE's block model as .blx markup on stdout."""
    try:
        program = parse_source(_read(file))
    except SourceError as err:
        _report(err, file)
        sys.exit(1)
    click.echo(to_markup(ast_to_blocks(program)), nl=False)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="print the full trace as JSON")
@click.option("--step-limit", default=DEFAULT_STEP_LIMIT, show_default=True)
def run(file, as_json, step_limit):
    """Execute FILE; prints written output (or the whole trace with --json)."""
    try:
        program = parse_source(_read(file))
    except SourceError as err:
        _report(err, file)
        sys.exit(1)
    try:
        trace = run_program(program, step_limit)
    except ExecError as err:
        diag = err.diagnostic
        click.echo(f"{file}:{diag.line}: {diag.code}: {diag.message}", err=True)
        sys.exit(1)
    if as_json:
        click.echo(json.dumps(trace.to_json(), indent=2))
    else:
        for line in trace.output:
            click.echo(line)


@cli.command()
@click.argument("corpus", type=click.Path(exists=True, dir_okay=False))
@click.argument("submission_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--json", "as_json", is_flag=True, help="emit the report as JSON")
def grade(corpus, submission_dir, as_json):
    """Grade SUBMISSION_DIR (files named <task-id>.mp / <task-id>.txt)
    against every task in CORPUS."""
    try:
        tasks = load_corpus(corpus)
    except CorpusError as err:
        click.echo(f"{corpus}: {err.code}: {err}", err=True)
        sys.exit(1)
    reports = grade_directory(tasks, submission_dir)
    mean = sum(r.score for r in reports) / len(reports)
    if as_json:
        payload = {
            "tasks": [
                {
                    "id": report.task_id,
                    "kind": task.kind,
                    "score": report.score,
                    "detail": report.detail,
                }
                for task, report in zip(tasks, reports)
            ],
            "mean_score": mean,
        }
        click.echo(json.dumps(payload, indent=2))
        return
    width = max(len(t.id) for t in tasks)
    click.echo(f"{'task'.ljust(width)}  {'kind':17}  score")
    for task, report in zip(tasks, reports):
        click.echo(f"{task.id.ljust(width)}  {task.kind:17}  {report.score:>5}")
    click.echo(f"{'mean'.ljust(width)}  {'':17}  {mean:>5.1f}")


@cli.command()
def palette():
    """Print the block palette as JSON (the document served at /palette)."""
    click.echo(json.dumps(palette_json(), indent=2))


@cli.command()
@click.option("--port", default=None, type=int, help="defaults to $HYBRID_PORT or 8606")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Run the HTTP session service."""
    import uvicorn

    from .server import create_app

    if port is None:
        port = int(os.environ.get("HYBRID_PORT", "8606"))
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


def main():
    cli(max_content_width=100)


if __name__ == "__main__":
    main()
