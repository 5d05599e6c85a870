"""Command-line interface.

Subcommands: ``summarize`` (extract a summary), ``evaluate`` (score a
summary against references), ``ablate`` (sweep all feature combinations),
``stats`` (corpus statistics). Exit codes: 0 success, 1 usage error,
2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import SummarizerError
from .extract import SummaryConfig, resolve_budget
from .features import FeatureWeights
from .harness import (
    AblationConfig,
    FeatureMask,
    ablation_to_csv,
    ablation_to_json,
    mask_to_weights,
    reorder_from_experiment_numbering,
    run_ablation,
    summarize_document,
)
from .rouge import METRIC_NAMES, report_to_csv, report_to_json, score_all
from .sentiment import (
    FixtureSentimentProvider,
    LexiconSentimentProvider,
    NullSentimentProvider,
    default_provider,
    load_lexicon,
)
from .textcore import Document, corpus_stats, load_stopwords, tokenize


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems via exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _add_engine_flags(p: argparse.ArgumentParser, default_length: str) -> None:
    p.add_argument("--input", required=True, help="UTF-8 plain text document")
    p.add_argument(
        "--length",
        default=default_length,
        help="summary budget: word count (e.g. 100) or percentage (e.g. 15%%)",
    )
    p.add_argument("--theta", type=float, default=0.1, help="redundancy threshold")
    p.add_argument(
        "--weights",
        nargs=5,
        type=float,
        metavar=("W1", "W2", "W3", "W4", "W5"),
        help="feature weights, numbered 1=tfidf 2=aggregate 3=position 4=centroid 5=sentiment",
    )
    p.add_argument(
        "--features",
        metavar="MASK",
        help="enabled features as e.g. 1+2+5 (same numbering as --weights)",
    )
    p.add_argument("--stopwords", help="stopword file overriding the bundled list")
    p.add_argument(
        "--sentiment",
        default="lexicon",
        help="sentiment provider: lexicon | lexicon:FILE | fixture:FILE | none",
    )
    p.add_argument("--position-mode", choices=("eq2", "table1"), default="table1")
    p.add_argument("--similarity-mode", choices=("pool", "max_pairwise"), default="pool")


def _build_parser() -> _Parser:
    parser = _Parser(prog="salientsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("summarize", help="extract a summary from a document")
    _add_engine_flags(ps, default_length="15%")
    ps.add_argument(
        "--emit",
        choices=("summary", "matrix", "trace", "all"),
        default="summary",
        help="artifacts to produce",
    )
    ps.add_argument("--out", help="directory to write artifacts into (default: stdout)")

    pe = sub.add_parser("evaluate", help="score a summary against references")
    pe.add_argument("--system", required=True, help="system summary file")
    pe.add_argument(
        "--ref", action="append", required=True, help="reference file (repeatable)"
    )
    pe.add_argument(
        "--metrics",
        default="all",
        help="comma-separated metric names, or 'all' for the full fourteen",
    )
    pe.add_argument("--w", type=float, default=1.5, help="rougeW run exponent")
    pe.add_argument("--limit-words", type=int, help="truncate texts to the first N words")
    pe.add_argument("--format", choices=("json", "csv"), default="json")

    pa = sub.add_parser("ablate", help="summarize and score every feature combination")
    _add_engine_flags(pa, default_length="100")
    pa.add_argument("--ref", action="append", required=True, help="reference file (repeatable)")
    pa.add_argument("--w", type=float, default=1.2, help="rougeW run exponent")
    pa.add_argument("--limit-words", type=int, default=100)
    pa.add_argument("--format", choices=("csv", "json"), default="csv")
    pa.add_argument("--out", help="directory to write the report into (default: stdout)")

    pst = sub.add_parser("stats", help="corpus statistics for a document")
    pst.add_argument("--input", required=True)
    pst.add_argument("--stopwords", help="stopword file overriding the bundled list")

    return parser


def _make_provider(spec: str):
    if spec == "none":
        return NullSentimentProvider()
    if spec == "lexicon":
        return default_provider()
    if spec.startswith("lexicon:"):
        return LexiconSentimentProvider(load_lexicon(spec.split(":", 1)[1]))
    if spec.startswith("fixture:"):
        return FixtureSentimentProvider.from_file(spec.split(":", 1)[1])
    raise _UsageError(f"bad --sentiment value {spec!r}")


def _make_weights(args) -> FeatureWeights:
    w = (1.0,) * 5
    if args.weights is not None:
        w = reorder_from_experiment_numbering(tuple(args.weights))
    if args.features:
        try:
            mask = FeatureMask.from_label(args.features)
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
        return mask_to_weights(mask, FeatureWeights(w=w))
    return FeatureWeights(w=w)


def _read_document(args) -> Document:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    return Document.from_file(args.input, stopwords)


def _parse_metrics(spec: str) -> tuple[str, ...]:
    if spec.strip().lower() == "all":
        return METRIC_NAMES
    aliases = {name.lower(): name for name in METRIC_NAMES}
    aliases["rouges"] = "rougeS*"
    aliases["rougesu"] = "rougeSU*"
    names = []
    for part in spec.split(","):
        key = part.strip().lower()
        if not key:
            continue
        if key not in aliases:
            raise _UsageError(f"unknown metric {part.strip()!r}")
        names.append(aliases[key])
    if not names:
        raise _UsageError("no metrics requested")
    return tuple(names)


def _trace_payload(result, theta: float, budget_words: int) -> dict:
    return {
        "schema_version": 1,
        "theta": theta,
        "budget_words": budget_words,
        "selected": list(result.summary.selected),
        "word_count": result.summary.word_count,
        "entries": [
            {
                "index": e.index,
                "similarity": e.similarity,
                "accepted": e.accepted,
                "reason": e.reason,
            }
            for e in result.summary.trace
        ],
    }


def _emit(artifacts: dict[str, str], out_dir: str | None, stdout) -> None:
    if out_dir:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for filename, content in artifacts.items():
            (directory / filename).write_text(content, encoding="utf-8")
    else:
        for i, content in enumerate(artifacts.values()):
            if i:
                stdout.write("\n")
            stdout.write(content if content.endswith("\n") else content + "\n")


def _cmd_summarize(args, stdout) -> int:
    doc = _read_document(args)
    provider = _make_provider(args.sentiment)
    config = SummaryConfig(
        theta=args.theta,
        budget=args.length,
        weights=_make_weights(args),
        position_mode=args.position_mode,
        similarity_mode=args.similarity_mode,
    )
    result = summarize_document(doc, provider, config)

    artifacts: dict[str, str] = {}
    if args.emit in ("summary", "all"):
        artifacts["summary.txt"] = result.text
    if args.emit in ("matrix", "all"):
        artifacts["matrix.csv"] = result.matrix.to_csv()
        artifacts["matrix.json"] = result.matrix.to_json()
    if args.emit in ("trace", "all"):
        budget_words = resolve_budget(config.budget, doc)
        artifacts["trace.json"] = json.dumps(
            _trace_payload(result, args.theta, budget_words), indent=2
        )
    _emit(artifacts, args.out, stdout)
    return 0


def _cmd_evaluate(args, stdout) -> int:
    metrics = _parse_metrics(args.metrics)
    system_tokens = tokenize(Path(args.system).read_text(encoding="utf-8"))
    references = [
        tokenize(Path(ref).read_text(encoding="utf-8")) for ref in args.ref
    ]
    report = score_all(
        system_tokens, references, metrics=metrics, w=args.w, limit_words=args.limit_words
    )
    text = report_to_json(report) if args.format == "json" else report_to_csv(report)
    stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def _cmd_ablate(args, stdout) -> int:
    doc = _read_document(args)
    provider = _make_provider(args.sentiment)
    references = [Path(ref).read_text(encoding="utf-8") for ref in args.ref]
    config = AblationConfig(
        theta=args.theta,
        budget=args.length,
        limit_words=args.limit_words,
        w_exponent=args.w,
        base_weights=_make_weights(args),
        position_mode=args.position_mode,
        similarity_mode=args.similarity_mode,
    )
    rows = run_ablation(doc, references, config, provider)
    if args.format == "csv":
        artifacts = {"ablation.csv": ablation_to_csv(rows)}
    else:
        artifacts = {"ablation.json": ablation_to_json(rows)}
    _emit(artifacts, args.out, stdout)
    return 0


def _cmd_stats(args, stdout) -> int:
    doc = _read_document(args)
    stats = corpus_stats(doc)
    stdout.write(json.dumps(stats.as_dict(), indent=2) + "\n")
    return 0


_COMMANDS = {
    "summarize": _cmd_summarize,
    "evaluate": _cmd_evaluate,
    "ablate": _cmd_ablate,
    "stats": _cmd_stats,
}


def cli_main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Run the CLI; returns the process exit code instead of exiting."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, stdout)
    except _UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except (SummarizerError, OSError, json.JSONDecodeError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
