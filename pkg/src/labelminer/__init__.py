"""Compression-based discovery of token patterns that characterize
binary-labeled instances (e.g. misclassified vs. correctly classified)."""

from .corpus import (
    Bitmap,
    LabeledTransactionSet,
    Vocabulary,
    iter_jsonl,
    iter_paired_files,
    parse_corpus,
)
from .embeddings import EmbeddingTable, cosine, load_embeddings, load_embeddings_file
from .errors import (
    CorpusError,
    DataError,
    EmbeddingError,
    LabelMinerError,
    PatternError,
    PatternSyntaxError,
    SynthError,
)
from .mdl import (
    CodeConstants,
    CoverState,
    binomial_code,
    data_length,
    gain,
    log2_binomial,
    model_length,
    total_length,
    universal_int,
)
from .patterns import (
    Clause,
    Pattern,
    PatternEntry,
    flatten_tokens,
    matches,
    parse_pattern,
    parse_pattern_structure,
    render,
    support_bitmap,
)
from .report import build_report, report_json, report_text
from .search import MiningResult, SearchConfig, mine
from .synth import PlantedPattern, PlantedTruth, SynthSpec, baseline_topk, generate, soft_f1

__version__ = "0.1.0"

__all__ = [
    "Bitmap",
    "Clause",
    "CodeConstants",
    "CorpusError",
    "CoverState",
    "DataError",
    "EmbeddingError",
    "EmbeddingTable",
    "LabelMinerError",
    "LabeledTransactionSet",
    "MiningResult",
    "Pattern",
    "PatternEntry",
    "PatternError",
    "PatternSyntaxError",
    "PlantedPattern",
    "PlantedTruth",
    "SearchConfig",
    "SynthError",
    "SynthSpec",
    "Vocabulary",
    "__version__",
    "baseline_topk",
    "binomial_code",
    "build_report",
    "cosine",
    "data_length",
    "flatten_tokens",
    "gain",
    "generate",
    "iter_jsonl",
    "iter_paired_files",
    "load_embeddings",
    "load_embeddings_file",
    "log2_binomial",
    "matches",
    "mine",
    "model_length",
    "parse_corpus",
    "parse_pattern",
    "parse_pattern_structure",
    "render",
    "report_json",
    "report_text",
    "soft_f1",
    "support_bitmap",
    "total_length",
    "universal_int",
]
