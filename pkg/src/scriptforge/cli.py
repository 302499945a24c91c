"""Command-line entry points for the screenplay generation pipeline."""
from __future__ import annotations

import json
import sys

import click

from .config import load_config
from .service.context import ServiceContext


def _context(ctx: click.Context) -> ServiceContext:
    opts = ctx.obj
    overrides = dict(item.split("=", 1) for item in opts["set"])
    config = load_config(opts["config"], overrides=overrides)
    return ServiceContext(
        config,
        data_dir=opts["data_dir"],
        mock=opts["mock"],
        replay=opts["replay"],
    )


@click.group()
@click.option("--config", type=click.Path(exists=True), default=None, help="INI config file.")
@click.option("--data-dir", default=None, help="Override the data directory.")
@click.option("--mock", is_flag=True, help="Route remote backends to deterministic mock rules.")
@click.option("--replay", is_flag=True, help="Serve every completion from the local cache.")
@click.option("--set", "set_", multiple=True, help="Config override, e.g. service.port=9000.")
@click.pass_context
def main(ctx, config, data_dir, mock, replay, set_):
    ctx.obj = {
        "config": config,
        "data_dir": data_dir,
        "mock": mock,
        "replay": replay,
        "set": list(set_),
    }


def _emit(payload) -> None:
    click.echo(json.dumps(payload, ensure_ascii=False, indent=2))


@main.command()
@click.argument("corpus_dir", type=click.Path(exists=True, file_okay=False))
@click.pass_context
def ingest(ctx, corpus_dir):
    """Parse, standardize, and filter raw screenplay files."""
    service = _context(ctx)
    try:
        _emit(service.ingest(corpus_dir))
    finally:
        service.close()


@main.command()
@click.option("--profile", default="mock", help="Backend profile name.")
@click.option("--mode", type=click.Choice(["hybrid", "reverse_only"]), default="hybrid")
@click.option("--limit", type=int, default=None, help="Max scenes to process.")
@click.pass_context
def synth(ctx, profile, mode, limit):
    """Build training pairs from kept corpus scenes."""
    service = _context(ctx)
    try:
        _emit(service.synthesize(profile, mode=mode, limit=limit))
    finally:
        service.close()


@main.command("filter")
@click.pass_context
def filter_cmd(ctx):
    """Run automated checks on pairs awaiting them."""
    service = _context(ctx)
    try:
        _emit(service.filter_pending())
    finally:
        service.close()


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--mode", type=click.Choice(["hybrid", "reverse_only"]), default="hybrid")
@click.option("--cot/--no-cot", "include_cot", default=True, help="Include directives in targets.")
@click.option("--pipeline", type=click.Choice(["dsr", "end_to_end"]), default="dsr")
@click.pass_context
def export(ctx, path, mode, include_cot, pipeline):
    """Write approved pairs as a fine-tuning JSONL file."""
    service = _context(ctx)
    try:
        _emit(service.export(path, mode=mode, include_cot=include_cot, pipeline=pipeline))
    finally:
        service.close()


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--pipeline", type=click.Choice(["dsr", "end_to_end"]), default="dsr")
@click.option("--stage1-profile", default="mock")
@click.option("--stage2-profile", default="mock")
@click.pass_context
def generate(ctx, input_file, pipeline, stage1_profile, stage2_profile):
    """Generate a screenplay scene from a structured brief (JSON file)."""
    service = _context(ctx)
    try:
        with open(input_file, encoding="utf-8") as fh:
            payload = json.load(fh)
        run = service.generate(
            payload,
            pipeline=pipeline,
            stage1_profile=stage1_profile,
            stage2_profile=stage2_profile,
        )
        _emit({"run_id": run.run_id, "state": run.state, "error": run.error})
        if run.state != "ok":
            sys.exit(1)
    finally:
        service.close()


@main.command("eval")
@click.option("--session", "session_id", required=True)
@click.option("--ratings", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--comparisons", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_context
def eval_cmd(ctx, session_id, ratings, comparisons):
    """Import rating/comparison JSONL files into an evaluation session."""
    service = _context(ctx)
    try:
        _emit(service.import_eval_jsonl(session_id, ratings, comparisons))
    finally:
        service.close()


@main.command()
@click.option("--session", "session_id", required=True)
@click.option("--table", is_flag=True, help="Print an aligned text table instead of JSON.")
@click.pass_context
def report(ctx, session_id, table):
    """Summarize an evaluation session."""
    from .evalkit.report import EvalReport

    service = _context(ctx)
    try:
        payload = service.session_report(session_id)
        if table:
            click.echo(EvalReport.from_dict(payload).to_table())
        else:
            _emit(payload)
    finally:
        service.close()


@main.command()
@click.option("--port", type=int, default=None)
@click.option("--host", default="127.0.0.1")
@click.pass_context
def serve(ctx, port, host):
    """Run the REST API."""
    import uvicorn

    from .service.api import create_app

    service = _context(ctx)
    app = create_app(service)
    uvicorn.run(app, host=host, port=port or service.config.service.port)


if __name__ == "__main__":
    main()
