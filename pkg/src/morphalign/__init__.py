"""morphalign: tokenizer evaluation and corpus-equity toolkit."""

__version__ = "0.1.0"

from .byte_premium import BytePremium, compute_byte_premium, scale_corpus
from .dataset_ingest import (
    ConlluToken,
    ParallelCorpus,
    derive_items,
    finalize_dataset,
    parse_conllu,
    parse_unimorph,
    read_parallel,
)
from .errors import (
    ConfigError,
    DatasetTooSmall,
    FormatError,
    InputError,
    MorphalignError,
    StatError,
)
from .metrics import MetricsReport, compute_report, ctc, mean_token_length, renyi
from .morphscore import (
    GroupComparison,
    MorphItem,
    MorphScoreReport,
    compare_groups,
    morphscore,
    score_item,
)
from .stats import (
    FTestResult,
    PearsonResult,
    RegressionResult,
    TTestResult,
    nested_f,
    ols_fit,
    pearson_r,
    welch_t,
)
from .synthlang import SynthCorpus, SynthSpec, expected_word_length, generate, gold_splitter
from .tok_core import (
    Segmentation,
    TokenizerModel,
    decode,
    encode_text,
    encode_word,
    load_model,
    save_model,
    train_bpe,
)

__all__ = [
    "__version__",
    "BytePremium", "compute_byte_premium", "scale_corpus",
    "ConlluToken", "ParallelCorpus", "derive_items", "finalize_dataset",
    "parse_conllu", "parse_unimorph", "read_parallel",
    "ConfigError", "DatasetTooSmall", "FormatError", "InputError",
    "MorphalignError", "StatError",
    "MetricsReport", "compute_report", "ctc", "mean_token_length", "renyi",
    "GroupComparison", "MorphItem", "MorphScoreReport", "compare_groups",
    "morphscore", "score_item",
    "FTestResult", "PearsonResult", "RegressionResult", "TTestResult",
    "nested_f", "ols_fit", "pearson_r", "welch_t",
    "SynthCorpus", "SynthSpec", "expected_word_length", "generate", "gold_splitter",
    "Segmentation", "TokenizerModel", "decode", "encode_text", "encode_word",
    "load_model", "save_model", "train_bpe",
]
