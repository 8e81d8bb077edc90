"""Command-line entry point: extract, ablate, evaluate, stats.

Exit codes: 0 on success, 1 on usage errors, 2 on runtime errors. Output
files are only written after a run completes, so a failed invocation never
leaves a partial result behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from kvextract.association import write_pairs
from kvextract.corpus import CORPUS_FORMATS, CorpusError, corpus_stats, load_corpus
from kvextract.evaluation import evaluate_extractions, load_predictions_jsonl
from kvextract.pipeline import PipelineConfig, PipelineError, config_from_dict, run
from kvextract.reader import ReaderError, ReaderKind, ReaderSpec

_USAGE_EXIT = 1
_RUNTIME_EXIT = 2

_READER_CHOICES = {"fixture": ReaderKind.FIXTURE,
                   "nearest": ReaderKind.NEAREST_ENTITY,
                   "remote": ReaderKind.REMOTE}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for runtime
    # failures, so usage problems are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(_USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _default_parallelism(kind: ReaderKind) -> int:
    count = os.cpu_count() or 1
    if kind is ReaderKind.REMOTE:
        return min(count, 8)
    return count


def _add_extract_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--in", dest="input", required=True, help="corpus file")
    sub.add_argument("--format", choices=CORPUS_FORMATS, default="parsed-jsonl")
    sub.add_argument("--out", required=True, help="extraction JSONL output path")
    sub.add_argument("--reader", choices=sorted(_READER_CHOICES), default=None)
    sub.add_argument("--endpoint", default=None,
                     help="remote reader URL (falls back to $READER_ENDPOINT)")
    sub.add_argument("--fixture", default=None, help="fixture reader JSONL path")
    sub.add_argument("--timeout", type=float, default=None)
    sub.add_argument("--retries", type=int, default=None)
    sub.add_argument("--parallelism", type=int, default=None)
    sub.add_argument("--diagnostics", default=None, help="write run diagnostics JSON here")
    sub.add_argument("--config", default=None, help="JSON config file mirroring PipelineConfig")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kvextract",
                     description="Zero-shot key-value extraction and its evaluation harness.")
    commands = parser.add_subparsers(dest="command", required=True)

    extract = commands.add_parser("extract", parents=[], help="run the extraction pipeline")
    _add_extract_flags(extract)

    ablate = commands.add_parser("ablate",
                                 help="extraction with phrase generation disabled "
                                      "(entity-only reverse questions)")
    _add_extract_flags(ablate)

    evaluate = commands.add_parser("evaluate", help="score extractions against gold labels")
    evaluate.add_argument("--pred", required=True, help="extraction JSONL")
    evaluate.add_argument("--gold", required=True, help="gold-labeled corpus file")
    evaluate.add_argument("--format", choices=CORPUS_FORMATS, default="parsed-jsonl")
    evaluate.add_argument("--report", default=None, help="write the JSON report here")

    stats = commands.add_parser("stats", help="print corpus statistics")
    stats.add_argument("--in", dest="input", required=True, help="corpus file")
    stats.add_argument("--format", choices=CORPUS_FORMATS, default="parsed-jsonl")
    stats.add_argument("--json", dest="json_out", default=None,
                       help="also write statistics as JSON to this path")
    return parser


def _resolve_config(args: argparse.Namespace, ablation: bool) -> PipelineConfig:
    base = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            base = json.load(fh)
    cfg = config_from_dict(base)

    reader_kind = cfg.reader.kind
    if args.reader:
        reader_kind = _READER_CHOICES[args.reader]
    endpoint = args.endpoint or cfg.reader.endpoint or os.environ.get("READER_ENDPOINT")
    fixture = args.fixture or cfg.reader.fixture_path
    spec = ReaderSpec(
        kind=reader_kind,
        endpoint=endpoint,
        fixture_path=fixture,
        timeout=args.timeout if args.timeout is not None else cfg.reader.timeout,
        retries=args.retries if args.retries is not None else cfg.reader.retries,
        max_in_flight=cfg.reader.max_in_flight,
    )
    parallelism = args.parallelism or cfg.parallelism or _default_parallelism(reader_kind)
    return PipelineConfig(
        reader=spec,
        ablation_no_phrases=ablation or cfg.ablation_no_phrases,
        parallelism=parallelism,
        diagnostics_path=args.diagnostics or cfg.diagnostics_path,
    )


def _cmd_extract(args: argparse.Namespace, ablation: bool) -> int:
    docs = load_corpus(args.input, args.format)
    cfg = _resolve_config(args, ablation)
    pairs, _ = run(docs, cfg)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_pairs(pairs, fh)
    print(f"wrote {len(pairs)} pairs to {args.out}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    docs = load_corpus(args.gold, args.format)
    predictions = load_predictions_jsonl(args.pred)
    report = evaluate_extractions(docs, predictions)
    print(report.format_text())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    docs = load_corpus(args.input, args.format)
    report = corpus_stats(docs)
    print(report.format_text())
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse signals usage problems (and -h) this way
        return int(exc.code or 0)
    try:
        if args.command == "extract":
            return _cmd_extract(args, ablation=False)
        if args.command == "ablate":
            return _cmd_extract(args, ablation=True)
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        if args.command == "stats":
            return _cmd_stats(args)
        parser.error(f"unknown command {args.command!r}")
    except (CorpusError, ReaderError, PipelineError, OSError, ValueError) as exc:
        print(f"kvextract: error: {exc}", file=sys.stderr)
        return _RUNTIME_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
