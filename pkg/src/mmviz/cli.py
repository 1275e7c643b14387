"""Command line entry points: serve, replay, report, parse, validate-patterns."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import canonical
from .dataset import load_dataset
from .fusion import check_pattern_table, equivalence_gaps, load_patterns
from .nlparser import ParseFailure, build_lexicon, load_keywords, parse as parse_command
from .session import SessionConfig, classify_trace, read_trace, replay


def _load(dataset_path: str, fmt: str | None = None):
    path = Path(dataset_path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "csv"
    return load_dataset(path.read_text(encoding="utf-8"), fmt=fmt)


@click.group()
def main():
    """Multimodal visualization interaction engine."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8707, show_default=True)
def serve(config_path, host, port):
    """Run the websocket session server."""
    import uvicorn

    from .session import create_app

    config = SessionConfig.from_file(config_path)
    uvicorn.run(create_app(config), host=host, port=port)


@main.command("replay")
@click.option("--trace", "trace_path", required=True, type=click.Path(exists=True))
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--assert-golden", is_flag=True,
              help="Fail unless replay output matches the recorded server messages byte for byte.")
@click.option("--out", "out_path", type=click.Path(), help="Write per-step snapshots as JSONL.")
def replay_cmd(trace_path, dataset_path, assert_golden, out_path):
    """Replay a recorded trace against a dataset."""
    dataset = _load(dataset_path)
    trace = read_trace(trace_path)
    result = replay(trace, dataset)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            for snap in result.snapshots:
                fh.write(canonical.dumps(snap) + "\n")
    counts = classify_trace(trace, dataset)
    click.echo(canonical.dumps({
        "snapshots": len(result.snapshots),
        "divergences": len(result.divergences),
        "taxonomy": counts,
        "final_revision": result.final_snapshot["revision"] if result.final_snapshot else None,
    }))
    if result.divergences:
        for d in result.divergences[:5]:
            click.echo(f"divergence at server message {d['index']}", err=True)
        if assert_golden:
            sys.exit(1)


@main.command()
@click.option("--trace", "trace_path", required=True, type=click.Path(exists=True))
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
def report(trace_path, dataset_path, out_dir):
    """Replay a trace and write snapshots, taxonomy CSV, and figures."""
    from .report import write_report

    dataset = _load(dataset_path)
    summary = write_report(read_trace(trace_path), dataset, out_dir)
    click.echo(canonical.dumps(summary))


@main.command("parse")
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--keywords", "keywords_path", type=click.Path(exists=True))
def parse_repl(dataset_path, keywords_path):
    """Parse transcript lines from stdin into command JSON (the parser REPL)."""
    dataset = _load(dataset_path)
    lexicon = build_lexicon(dataset, load_keywords(keywords_path))
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        result = parse_command(line, lexicon)
        if isinstance(result, ParseFailure):
            click.echo(canonical.dumps({"failure": result.reason.value, "detail": result.detail}))
        else:
            click.echo(canonical.dumps(result.to_dict()))


@main.command("validate-patterns")
@click.option("--table", "table_path", type=click.Path(exists=True),
              help="Pattern table JSON; defaults to the shipped table.")
def validate_patterns(table_path):
    """Check the interaction pattern table for gesture/operation conflicts."""
    table = load_patterns(table_path)
    conflicts = check_pattern_table(table)
    gaps = equivalence_gaps(table)
    click.echo(canonical.dumps({"conflicts": conflicts, "equivalence_gaps": gaps}))
    if conflicts:
        sys.exit(1)


if __name__ == "__main__":
    main()
