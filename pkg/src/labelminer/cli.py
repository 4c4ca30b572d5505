"""Command-line front door: mine, synth, eval.

Exit codes: 0 success (an empty pattern set is success), 2 for missing
or unreadable files, bad flags, and infeasible synthetic specs, 3 for
malformed input content (bad labels or broken records, with line
numbers). A report is only ever written in full.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .corpus import iter_jsonl, iter_paired_files, parse_corpus, write_paired_files
from .embeddings import load_embeddings_file, write_embeddings_file
from .errors import DataError, LabelMinerError, SynthError
from .patterns import parse_pattern_structure
from .report import build_report, report_json, report_text
from .search import SearchConfig, mine
from .synth import SynthSpec, generate, soft_f1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3


def _config_from_args(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        min_support=args.min_support,
        min_token_freq=args.min_token_freq,
        beam=args.beam,
        neighbors_k=args.neighbors_k,
        min_cosine=args.min_cosine,
        epsilon_gain=args.epsilon_gain,
        max_rounds=args.max_rounds,
        mine_both_labels=not args.plus_only,
    )


def run_mine(args: argparse.Namespace) -> int:
    if args.labels is not None:
        stream = iter_paired_files(args.input, args.labels)
    else:
        stream = iter_jsonl(args.input)
    db = parse_corpus(stream)
    embeddings = None
    if args.embeddings is not None:
        embeddings = load_embeddings_file(args.embeddings)
    config = _config_from_args(args)
    result = mine(db, config, embeddings)
    report = build_report(db, result, config)
    if args.format == "json":
        payload = report_json(report)
    else:
        payload = report_text(report, unicode_ops=args.unicode)
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def run_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        n=args.n,
        m=args.vocab,
        num_patterns=args.patterns,
        pattern_len=args.pattern_len,
        group_size=args.group_size,
        imbalance=args.imbalance,
        target_rate=args.target_rate,
        leak_rate=args.leak_rate,
        destructive_noise=args.noise,
        zipf_exponent=args.zipf_exponent,
        background_density=args.background_density,
        seed=args.seed,
    )
    db, truth, table = generate(spec)
    os.makedirs(args.out_dir, exist_ok=True)
    instances = [
        [db.vocab.token_of(j) for j in sorted(db.instance_tokens(i))]
        for i in range(db.n)
    ]
    write_paired_files(
        instances,
        list(db.labels),
        os.path.join(args.out_dir, "corpus.txt"),
        os.path.join(args.out_dir, "labels.txt"),
    )
    write_embeddings_file(table, os.path.join(args.out_dir, "embeddings.vec"))
    planted_doc = {
        "schema": 1,
        "patterns": [
            {
                "pattern": p.render(),
                "target": p.target,
                "support_plus": p.support_plus,
                "support_minus": p.support_minus,
            }
            for p in truth.patterns
        ],
    }
    with open(
        os.path.join(args.out_dir, "planted.json"), "w", encoding="utf-8"
    ) as fh:
        fh.write(json.dumps(planted_doc, indent=2) + "\n")
    return EXIT_OK


def _load_pattern_sets(path: str) -> list[frozenset[str]]:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: bad JSON: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(doc, dict) or "patterns" not in doc:
        raise DataError(f"{path}: expected an object with a 'patterns' array")
    sets = []
    for record in doc["patterns"]:
        structure = parse_pattern_structure(record["pattern"])
        sets.append(frozenset(t for clause in structure for t in clause))
    return sets


def run_eval(args: argparse.Namespace) -> int:
    found = _load_pattern_sets(args.found)
    planted = _load_pattern_sets(args.planted)
    precision, recall, f1 = soft_f1(found, planted)
    sys.stdout.write(
        json.dumps({"precision": precision, "recall": recall, "f1": f1}) + "\n"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="labelminer",
        description=(
            "Discover token patterns that characterize binary-labeled "
            "instances, under a compression objective."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine patterns from a corpus")
    p_mine.add_argument("--input", required=True, help="JSONL corpus, or token file when --labels is given")
    p_mine.add_argument("--labels", help="labels file (paired-file mode)")
    p_mine.add_argument("--embeddings", help="word-vector file for group merges")
    p_mine.add_argument("--min-support", type=int, default=5, dest="min_support")
    p_mine.add_argument("--min-token-freq", type=int, default=3, dest="min_token_freq")
    p_mine.add_argument("--beam", type=int, default=500)
    p_mine.add_argument("--neighbors-k", type=int, default=10, dest="neighbors_k")
    p_mine.add_argument("--min-cosine", type=float, default=0.5, dest="min_cosine")
    p_mine.add_argument("--epsilon-gain", type=float, default=1e-6, dest="epsilon_gain")
    p_mine.add_argument("--max-rounds", type=int, default=1000, dest="max_rounds")
    p_mine.add_argument(
        "--plus-only",
        action="store_true",
        help="mine only plus-side patterns",
    )
    p_mine.add_argument("--output", help="write the report here instead of stdout")
    p_mine.add_argument("--format", choices=("json", "text"), default="json")
    p_mine.add_argument(
        "--unicode", action="store_true", help="display operators as ∧/⊕ in text output"
    )
    p_mine.set_defaults(func=run_mine)

    p_synth = sub.add_parser("synth", help="generate a synthetic benchmark")
    p_synth.add_argument("--n", type=int, required=True)
    p_synth.add_argument("--vocab", type=int, required=True)
    p_synth.add_argument("--patterns", type=int, required=True)
    p_synth.add_argument("--pattern-len", type=int, default=3, dest="pattern_len")
    p_synth.add_argument("--group-size", type=int, default=1, dest="group_size")
    p_synth.add_argument("--imbalance", type=float, default=0.1)
    p_synth.add_argument("--target-rate", type=float, default=0.05, dest="target_rate")
    p_synth.add_argument("--leak-rate", type=float, default=0.002, dest="leak_rate")
    p_synth.add_argument("--noise", type=float, default=0.05)
    p_synth.add_argument("--zipf-exponent", type=float, default=1.1, dest="zipf_exponent")
    p_synth.add_argument(
        "--background-density", type=float, default=8.0, dest="background_density"
    )
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out-dir", required=True, dest="out_dir")
    p_synth.set_defaults(func=run_synth)

    p_eval = sub.add_parser("eval", help="score found patterns against planted truth")
    p_eval.add_argument("--found", required=True)
    p_eval.add_argument("--planted", required=True)
    p_eval.set_defaults(func=run_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SynthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LabelMinerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
