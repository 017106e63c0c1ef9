"""Operator entry point: ingest the ontology, import sounds and candidate
labels, run desk-scale searches and stats, export datasets, serve the API.

Configuration precedence is flags > environment (TAXON_ prefix) > defaults.
Every subcommand exits 0 on success and nonzero with an error code on
failure; output is line-oriented by default and a structured document with
--format structured.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import __version__
from .config import PlatformConfig
from .errors import ParseError, PlatformError
from .search import build_index, search as run_search
from .session import PROVENANCES
from .store import ImportReport, Store


def _echo_issues(report: ImportReport) -> None:
    for issue in report.issues:
        click.echo(f"line {issue.line_no}: {issue.code}: {issue.message}", err=True)


def _report_doc(report: ImportReport) -> dict:
    return {
        "imported": report.imported,
        "issues": [
            {"line": i.line_no, "code": i.code, "message": i.message} for i in report.issues
        ],
    }


def _handles_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PlatformError as exc:
            click.echo(f"{exc.code}: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise ParseError(f"file not found: {path}")
    return p.read_text(encoding="utf-8")


_db_option = click.option(
    "--db",
    envvar="TAXON_DB",
    default="taxotag.db",
    show_default=True,
    help="Path to the platform database file [env: TAXON_DB].",
)

_format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["lines", "structured"]),
    default="lines",
    show_default=True,
    help="Output as human/script-friendly lines or one structured document.",
)


@click.group()
@click.version_option(__version__, prog_name="taxotag")
def main() -> None:
    """Sound annotation platform over a hierarchical category taxonomy."""


@main.command("ingest-ontology")
@click.option("--file", "file_path", required=True, help="Ontology document to load.")
@_db_option
@_format_option
@_handles_errors
def ingest_ontology(file_path: str, db: str, output_format: str) -> None:
    """Validate an ontology document and persist it as the live taxonomy."""
    raw = _read_text(file_path).encode("utf-8")
    store = Store(db)
    try:
        taxonomy = store.save_ontology(raw)
    finally:
        store.close()
    counts = {
        "categories": len(taxonomy),
        "edges": sum(len(c.child_ids) for c in taxonomy.categories.values()),
        "roots": len(taxonomy.roots),
    }
    if output_format == "structured":
        click.echo(json.dumps(counts))
    else:
        for key in ("categories", "edges", "roots"):
            click.echo(f"{key}: {counts[key]}")


@main.command("import-sounds")
@click.option("--file", "file_path", required=True, help="Sound records, one per line.")
@_db_option
@_format_option
@_handles_errors
def import_sounds(file_path: str, db: str, output_format: str) -> None:
    """Import sound resources; bad lines are reported and skipped."""
    text = _read_text(file_path)
    store = Store(db)
    try:
        report = store.import_sounds(text)
    finally:
        store.close()
    _echo_issues(report)
    if output_format == "structured":
        click.echo(json.dumps(_report_doc(report)))
    else:
        click.echo(f"imported: {report.imported}")


@main.command("import-candidates")
@click.option("--file", "file_path", required=True, help="Candidate labels, one per line.")
@_db_option
@_format_option
@_handles_errors
def import_candidates(file_path: str, db: str, output_format: str) -> None:
    """Import automatically generated candidate labels; idempotent."""
    text = _read_text(file_path)
    store = Store(db)
    try:
        report = store.import_candidates(text)
    finally:
        store.close()
    _echo_issues(report)
    if output_format == "structured":
        click.echo(json.dumps(_report_doc(report)))
    else:
        click.echo(f"imported: {report.imported}")


@main.command("export")
@click.option("--out", "out_path", required=True, help="Destination file.")
@click.option(
    "--provenance",
    default=None,
    help="Comma-separated provenance filter (default: all).",
)
@_db_option
@_format_option
@_handles_errors
def export(out_path: str, provenance: str | None, db: str, output_format: str) -> None:
    """Write the annotation dataset as one record per line."""
    provenances = None
    if provenance:
        provenances = {p.strip() for p in provenance.split(",") if p.strip()}
        bad = provenances - set(PROVENANCES)
        if bad:
            raise ParseError(f"unknown provenance: {', '.join(sorted(bad))}")
    store = Store(db)
    try:
        text = store.export_dataset(provenances)
    finally:
        store.close()
    Path(out_path).write_text(text, encoding="utf-8")
    count = sum(1 for line in text.splitlines() if line.strip())
    if output_format == "structured":
        click.echo(json.dumps({"exported": count, "path": out_path}))
    else:
        click.echo(f"exported: {count}")


@main.command("stats")
@click.option("--task-id", "task_ids", multiple=True, help="Restrict to specific tasks.")
@_db_option
@_format_option
@_handles_errors
def stats(task_ids: tuple[str, ...], db: str, output_format: str) -> None:
    """Report per-task durations and label counts for submitted tasks."""
    store = Store(db)
    try:
        results = store.compute_stats(list(task_ids) or None)
    finally:
        store.close()
    if output_format == "structured":
        click.echo(json.dumps([s.to_dict() for s in results]))
    else:
        for s in results:
            verdicts = json.dumps(s.verdict_counts, sort_keys=True)
            click.echo(
                f"{s.task_id}\t{s.kind}\t{s.annotator_id}\t{s.duration_s}"
                f"\t{s.label_count}\t{verdicts}"
            )


@main.command("search")
@click.argument("query")
@click.option("--limit", default=30, show_default=True, help="Maximum number of hits.")
@click.option("--threshold", default=0.05, show_default=True, help="Minimum similarity score.")
@_db_option
@_format_option
@_handles_errors
def search_command(query: str, limit: int, threshold: float, db: str, output_format: str) -> None:
    """Fuzzy-search categories; prints score, id and name per hit."""
    store = Store(db)
    try:
        taxonomy = store.require_taxonomy()
    finally:
        store.close()
    index = build_index(taxonomy)
    hits = run_search(index, query, limit=limit, threshold=threshold)
    if output_format == "structured":
        click.echo(
            json.dumps(
                {
                    "query": query,
                    "hits": [
                        {
                            "score": round(h.score, 4),
                            "id": h.category_id,
                            "name": taxonomy.get(h.category_id).name,
                        }
                        for h in hits
                    ],
                }
            )
        )
    else:
        for h in hits:
            click.echo(f"{h.score:.4f}\t{h.category_id}\t{taxonomy.get(h.category_id).name}")


@main.command("serve")
@_db_option
@click.option(
    "--audio-dir",
    envvar="TAXON_AUDIO_DIR",
    default=None,
    help="Directory of audio files served under /audio/ [env: TAXON_AUDIO_DIR].",
)
@click.option(
    "--port",
    envvar="TAXON_PORT",
    default=8000,
    show_default=True,
    type=int,
    help="Listening port [env: TAXON_PORT].",
)
@click.option("--host", default="127.0.0.1", show_default=True, help="Bind address.")
@click.option(
    "--sibling-moves",
    type=click.Choice(["on", "off"]),
    default="on",
    show_default=True,
    help="Allow refinement moves to sibling categories.",
)
@click.option(
    "--description-weight",
    default=0.5,
    show_default=True,
    type=float,
    help="Weight of description matches relative to name matches.",
)
@click.option(
    "--playlists",
    "playlists_path",
    default=None,
    help="Per-annotator ordered sound lists (a mapping document).",
)
@click.option(
    "--frontend-dir",
    default=None,
    help="Directory of static UI files served at the root path.",
)
@_handles_errors
def serve(
    db: str,
    audio_dir: str | None,
    port: int,
    host: str,
    sibling_moves: str,
    description_weight: float,
    playlists_path: str | None,
    frontend_dir: str | None,
) -> None:
    """Run the HTTP API (and optionally the static UI)."""
    import uvicorn

    from .api import create_app

    if not Path(db).is_file():
        click.echo(f"database not found: {db}", err=True)
        sys.exit(1)
    store = Store(db)
    if store.taxonomy is None:
        click.echo("no ontology ingested; run ingest-ontology first", err=True)
        sys.exit(1)
    playlists = None
    if playlists_path:
        playlists = json.loads(_read_text(playlists_path))
    config = PlatformConfig(
        sibling_moves_enabled=(sibling_moves == "on"),
        description_weight=description_weight,
    )
    app = create_app(
        store,
        config=config,
        audio_dir=audio_dir,
        frontend_dir=frontend_dir,
        playlists=playlists,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
