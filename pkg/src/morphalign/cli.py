"""Single entry point exposing the full pipeline as subcommands.

Every subcommand is file-in/file-out with no hidden state and writes a run
manifest (config hash, input digests, seed, version) next to its outputs;
fixed seeds and inputs give byte-identical primary outputs. Exit codes:
0 success, 2 usage, 3 input/format, 4 statistical/config.

A ``--config`` file with ``key = value`` lines supplies defaults for any long
flag (dashes as underscores); explicit flags take precedence. The
``MORPHALIGN_THREADS`` environment variable caps the worker pool used for
per-language fan-out.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from . import byte_premium as bp
from . import dataset_ingest as ingest
from . import metrics as metrics_mod
from . import report as report_mod
from . import stats as stats_mod
from . import synthlang
from . import tok_core
from .errors import ConfigError, FormatError, InputError, StatError
from .morphscore import MorphItem, morphscore, read_dataset, write_dataset, write_reports_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_STAT_CONFIG = 4

METRICS_COLUMNS = (
    "lang", "ctc", "n_words", "fertility", "mean_token_len",
    "renyi_alpha", "renyi_entropy", "renyi_efficiency", "n_token_types",
)


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# config files, manifests, small helpers
# ---------------------------------------------------------------------------


def _coerce(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    config: dict = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise FormatError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        config[key.strip().replace("-", "_")] = _coerce(value.strip())
    return config


def _opt(args, config: dict, name: str, default=None, required: bool = False):
    value = getattr(args, name, None)
    if value is None:
        value = config.get(name, default)
    if value is None and required:
        raise _UsageError(f"missing required option --{name.replace('_', '-')}")
    return value


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(
    manifest_path: Path,
    subcommand: str,
    config: dict,
    inputs: Sequence[str | Path],
    seed: int | None,
    extra: dict | None = None,
) -> None:
    config_json = json.dumps(config, sort_keys=True, ensure_ascii=False, default=str)
    manifest = {
        "subcommand": subcommand,
        "config": json.loads(config_json),
        "config_hash": hashlib.sha256(config_json.encode("utf-8")).hexdigest(),
        "inputs": [
            {"path": str(p), "sha256": _sha256(Path(p))} for p in inputs
        ],
        "seed": seed,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(extra)
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _manifest_for(out_path: Path) -> Path:
    return out_path.with_name(out_path.name + ".manifest.json")


def _pool_size() -> int:
    workers = os.cpu_count() or 1
    cap = os.environ.get("MORPHALIGN_THREADS")
    if cap:
        try:
            workers = max(1, min(workers, int(cap)))
        except ValueError as exc:
            raise ConfigError(f"MORPHALIGN_THREADS must be an integer, got {cap!r}") from exc
    return workers


def _parse_range(raw: str, flag: str) -> tuple[int, int]:
    parts = str(raw).split(":")
    if len(parts) != 2:
        raise _UsageError(f"{flag} expects 'MIN:MAX', got {raw!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise _UsageError(f"{flag} expects integers, got {raw!r}") from None


def _load_columns(path: Path) -> dict[str, list[str]]:
    import csv

    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return {name: [row[name] for row in rows] for name in rows[0]}


def _numeric(values: list[str], name: str) -> list[float]:
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise InputError(f"column {name!r} is not numeric") from exc


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_train_tokenizer(args) -> int:
    config = _load_config(args.config)
    corpus = _opt(args, config, "corpus", required=True)
    vocab_size = int(_opt(args, config, "vocab_size", required=True))
    out = Path(_opt(args, config, "out", required=True))
    marker = _opt(args, config, "marker", tok_core.MARKER)
    specials_raw = _opt(args, config, "specials")
    specials = (
        tuple(s for s in str(specials_raw).split(",") if s)
        if specials_raw
        else tok_core.DEFAULT_SPECIALS
    )
    model = tok_core.train_bpe(
        ingest.read_lines(corpus), vocab_size, marker=marker, specials=specials
    )
    tok_core.save_model(model, out)
    write_manifest(
        _manifest_for(out),
        "train-tokenizer",
        {"corpus": str(corpus), "vocab_size": vocab_size, "marker": marker,
         "specials": list(specials), "out": str(out)},
        [corpus],
        seed=None,
    )
    return EXIT_OK


def _cmd_tokenize(args) -> int:
    config = _load_config(args.config)
    model_path = _opt(args, config, "model", required=True)
    input_path = _opt(args, config, "input", required=True)
    out = Path(_opt(args, config, "out", required=True))
    fmt = _opt(args, config, "format", "ids")
    add_specials = bool(_opt(args, config, "add_specials", False))
    if fmt not in ("ids", "tokens"):
        raise _UsageError(f"--format must be ids|tokens, got {fmt!r}")
    model = tok_core.load_model(model_path)
    rendered = []
    for line in ingest.read_lines(input_path):
        ids = tok_core.encode_text(model, line, add_specials=add_specials)
        if fmt == "ids":
            rendered.append(" ".join(str(i) for i in ids))
        else:
            rendered.append(" ".join(model.vocab[i] for i in ids))
    out.write_text("\n".join(rendered) + ("\n" if rendered else ""), encoding="utf-8")
    write_manifest(
        _manifest_for(out),
        "tokenize",
        {"model": str(model_path), "input": str(input_path), "out": str(out),
         "format": fmt, "add_specials": add_specials},
        [model_path, input_path],
        seed=None,
    )
    return EXIT_OK


def _cmd_morphscore(args) -> int:
    config = _load_config(args.config)
    model_path = _opt(args, config, "model", required=True)
    dataset = _opt(args, config, "dataset", required=True)
    out = Path(_opt(args, config, "out", required=True))
    model = tok_core.load_model(model_path)
    items = read_dataset(dataset)
    if not items:
        raise InputError(f"{dataset}: dataset has no items")
    by_lang: dict[str, list[MorphItem]] = {}
    for item in items:
        by_lang.setdefault(item.lang, []).append(item)
    reports = [morphscore(model, by_lang[lang]) for lang in sorted(by_lang)]
    write_reports_csv(reports, out)
    write_manifest(
        _manifest_for(out),
        "morphscore",
        {"model": str(model_path), "dataset": str(dataset), "out": str(out)},
        [model_path, dataset],
        seed=None,
    )
    return EXIT_OK


def _cmd_build_dataset(args) -> int:
    config = _load_config(args.config)
    lang = _opt(args, config, "lang", required=True)
    out = Path(_opt(args, config, "out", required=True))
    seed = int(_opt(args, config, "seed", 0))
    conllu_paths = args.conllu or config.get("conllu") or []
    unimorph_paths = args.unimorph or config.get("unimorph") or []
    if isinstance(conllu_paths, str):
        conllu_paths = [conllu_paths]
    if isinstance(unimorph_paths, str):
        unimorph_paths = [unimorph_paths]
    if not conllu_paths and not unimorph_paths:
        raise _UsageError("need at least one --conllu or --unimorph input")
    items: list[MorphItem] = []
    for path in conllu_paths:
        items.extend(ingest.derive_items(ingest.parse_conllu(path), lang))
    for path in unimorph_paths:
        items.extend(ingest.parse_unimorph(path, lang))
    final = ingest.finalize_dataset(items, seed)
    write_dataset(final, out)
    write_manifest(
        _manifest_for(out),
        "build-dataset",
        {"lang": lang, "conllu": [str(p) for p in conllu_paths],
         "unimorph": [str(p) for p in unimorph_paths], "seed": seed, "out": str(out)},
        list(conllu_paths) + list(unimorph_paths),
        seed=seed,
        extra={"sampler": ingest.SAMPLER_ID, "n_items": len(final)},
    )
    return EXIT_OK


def _cmd_metrics(args) -> int:
    config = _load_config(args.config)
    model_path = _opt(args, config, "model", required=True)
    out = Path(_opt(args, config, "out", required=True))
    alpha = float(_opt(args, config, "alpha", metrics_mod.DEFAULT_ALPHA))
    corpora = args.corpus or config.get("corpus") or []
    langs = args.langs or config.get("langs") or []
    if isinstance(corpora, str):
        corpora = [corpora]
    if isinstance(langs, str):
        langs = [langs]
    if not corpora:
        raise _UsageError("need at least one --corpus")
    if len(corpora) != len(langs):
        raise _UsageError(f"got {len(corpora)} corpora but {len(langs)} --langs entries")
    model = tok_core.load_model(model_path)

    def one(job: tuple[str, str]) -> metrics_mod.MetricsReport:
        path, lang = job
        return metrics_mod.compute_report(model, ingest.read_lines(path), lang, alpha=alpha)

    jobs = list(zip(corpora, langs))
    workers = min(_pool_size(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, jobs))  # order-preserving
    else:
        reports = [one(job) for job in jobs]

    import csv

    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(METRICS_COLUMNS)
        for rep in reports:
            writer.writerow([getattr(rep, col) for col in METRICS_COLUMNS])
    write_manifest(
        _manifest_for(out),
        "metrics",
        {"model": str(model_path), "corpus": [str(c) for c in corpora],
         "langs": list(langs), "alpha": alpha, "out": str(out)},
        [model_path, *corpora],
        seed=None,
    )
    return EXIT_OK


def _parse_lang_paths(pairs: Sequence[str]) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for pair in pairs:
        lang, sep, path = pair.partition("=")
        if not sep or not lang or not path:
            raise _UsageError(f"expected LANG=PATH, got {pair!r}")
        mapping[lang] = path
    return mapping


def _cmd_byte_premium(args) -> int:
    config = _load_config(args.config)
    pivot = _opt(args, config, "pivot", "eng_latn")
    out = Path(_opt(args, config, "out", required=True))
    mapping = _parse_lang_paths(args.files)
    corpus = ingest.read_parallel(mapping)
    if pivot not in mapping:
        raise InputError(f"pivot {pivot!r} not among inputs {sorted(mapping)}")
    premiums = [bp.compute_byte_premium(corpus, lang, pivot) for lang in mapping]

    import csv

    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["lang", "pivot_lang", "ratio", "lang_bytes", "pivot_bytes"])
        for prem in premiums:
            writer.writerow([prem.lang, prem.pivot_lang, prem.ratio, prem.lang_bytes, prem.pivot_bytes])
    write_manifest(
        _manifest_for(out),
        "byte-premium",
        {"pivot": pivot, "files": dict(mapping), "out": str(out)},
        list(mapping.values()),
        seed=None,
    )
    return EXIT_OK


def _cmd_scale_corpus(args) -> int:
    config = _load_config(args.config)
    input_path = _opt(args, config, "input", required=True)
    budget = int(_opt(args, config, "budget_bytes", required=True))
    premium = float(_opt(args, config, "premium", required=True))
    seed = _opt(args, config, "seed")
    shuffle = bool(_opt(args, config, "shuffle", False))
    out = Path(_opt(args, config, "out", required=True))
    lines = ingest.read_lines(input_path)
    scaled = bp.scale_corpus(
        lines, premium, budget, seed=None if seed is None else int(seed), shuffle=shuffle
    )
    out.write_text("\n".join(scaled) + ("\n" if scaled else ""), encoding="utf-8")
    write_manifest(
        _manifest_for(out),
        "scale-corpus",
        {"input": str(input_path), "budget_bytes": budget, "premium": premium,
         "seed": seed, "shuffle": shuffle, "out": str(out)},
        [input_path],
        seed=None if seed is None else int(seed),
    )
    return EXIT_OK


def _cmd_synth(args) -> int:
    config = _load_config(args.config)
    typology = _opt(args, config, "typology", required=True)
    n_words = int(_opt(args, config, "n_words", required=True))
    seed = int(_opt(args, config, "seed", 0))
    out_dir = Path(_opt(args, config, "out_dir", required=True))
    spec = synthlang.SynthSpec(
        typology=typology,
        n_roots=int(_opt(args, config, "n_roots", 50)),
        root_len_range=_parse_range(_opt(args, config, "root_len", "3:6"), "--root-len"),
        affix_len_range=_parse_range(_opt(args, config, "affix_len", "2:4"), "--affix-len"),
        alphabet=tuple(str(_opt(args, config, "alphabet", "abdegiklmnoprstu"))),
        n_slots=int(_opt(args, config, "n_slots", 3)) if typology == synthlang.AGGLUTINATIVE else 0,
        n_affixes_per_slot=(
            int(_opt(args, config, "n_affixes_per_slot", 8))
            if typology == synthlang.AGGLUTINATIVE
            else 0
        ),
        paradigm_size=(
            int(_opt(args, config, "paradigm_size", 24))
            if typology == synthlang.FUSIONAL
            else 0
        ),
        zipf_s=float(_opt(args, config, "zipf_s", 1.0)),
        seed=seed,
    )
    corpus = synthlang.generate(
        spec,
        n_words,
        words_per_line=int(_opt(args, config, "words_per_line", 10)),
        lang=_opt(args, config, "lang"),
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus_path = out_dir / "corpus.txt"
    corpus_path.write_text("\n".join(corpus.lines) + "\n", encoding="utf-8")
    write_dataset(corpus.gold, out_dir / "gold.tsv")
    (out_dir / "spec.json").write_text(
        json.dumps(dataclasses.asdict(spec), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    write_manifest(
        out_dir / "manifest.json",
        "synth",
        {**dataclasses.asdict(spec), "n_words": n_words, "out_dir": str(out_dir)},
        [],
        seed=seed,
    )
    return EXIT_OK


def _regression_dict(res: stats_mod.RegressionResult) -> dict:
    return {
        "coefficients": res.coefficients,
        "r2": res.r2,
        "adj_r2": res.adj_r2,
        "rss": res.rss,
        "df_resid": res.df_resid,
        "n_obs": res.n_obs,
        "columns": list(res.columns),
    }


def _cmd_analyze(args) -> int:
    config = _load_config(args.config)
    data_path = Path(_opt(args, config, "data", required=True))
    out = Path(_opt(args, config, "out", required=True))
    formula = _opt(args, config, "formula")
    reduced_formula = _opt(args, config, "reduced")
    welch_formula = _opt(args, config, "welch")
    if not formula and not welch_formula:
        raise _UsageError("need --formula and/or --welch")
    columns = _load_columns(data_path)
    results: dict = {}

    if formula:
        response, predictors = stats_mod.parse_formula(formula)
        for name in [response, *predictors]:
            if name not in columns:
                raise InputError(f"{data_path}: no column {name!r}")
        y = _numeric(columns[response], response)
        full = stats_mod.ols_fit(y, {p: columns[p] for p in predictors})
        results["ols"] = {"formula": formula, "full": _regression_dict(full)}
        if reduced_formula:
            r_response, r_predictors = stats_mod.parse_formula(reduced_formula)
            if r_response != response:
                raise StatError(
                    f"reduced model predicts {r_response!r}, full predicts {response!r}"
                )
            for name in r_predictors:
                if name not in columns:
                    raise InputError(f"{data_path}: no column {name!r}")
            reduced = stats_mod.ols_fit(y, {p: columns[p] for p in r_predictors})
            ftest = stats_mod.nested_f(full, reduced)
            results["ols"]["reduced"] = _regression_dict(reduced)
            results["ols"]["anova"] = {
                "F": ftest.F, "df_num": ftest.df_num, "df_den": ftest.df_den, "p": ftest.p,
            }

    if welch_formula:
        value_col, group_cols = stats_mod.parse_formula(welch_formula)
        if len(group_cols) != 1:
            raise StatError(f"--welch expects 'value ~ group', got {welch_formula!r}")
        group_col = group_cols[0]
        for name in (value_col, group_col):
            if name not in columns:
                raise InputError(f"{data_path}: no column {name!r}")
        values = _numeric(columns[value_col], value_col)
        groups: dict[str, list[float]] = {}
        for g, v in zip(columns[group_col], values):
            groups.setdefault(g, []).append(v)
        if len(groups) != 2:
            raise StatError(f"column {group_col!r} must have exactly 2 levels, got {sorted(groups)}")
        pooled = bool(_opt(args, config, "pooled", False))
        name_a, name_b = sorted(groups)
        res = stats_mod.welch_t(groups[name_a], groups[name_b], pooled=pooled)
        results["welch"] = {
            "formula": welch_formula, "group_a": name_a, "group_b": name_b,
            "n_a": len(groups[name_a]), "n_b": len(groups[name_b]),
            "mean_a": res.mean_a, "mean_b": res.mean_b,
            "t": res.t, "df": res.df, "p": res.p, "pooled": pooled,
        }

    out.write_text(
        json.dumps(results, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    write_manifest(
        _manifest_for(out),
        "analyze",
        {"data": str(data_path), "formula": formula, "reduced": reduced_formula,
         "welch": welch_formula, "out": str(out)},
        [data_path],
        seed=None,
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    config = _load_config(args.config)
    out_dir = Path(_opt(args, config, "out_dir", required=True))
    if not args.csvs:
        raise _UsageError("need at least one metrics CSV")
    _, outputs = report_mod.write_report(args.csvs, out_dir)
    write_manifest(
        out_dir / "manifest.json",
        "report",
        {"csvs": [str(c) for c in args.csvs], "out_dir": str(out_dir)},
        list(args.csvs),
        seed=None,
        extra={"outputs": [p.name for p in outputs]},
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphalign",
        description="Tokenizer evaluation and corpus-equity toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd")

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="key=value config file; flags take precedence")
        p.set_defaults(func=func)
        return p

    p = add("train-tokenizer", _cmd_train_tokenizer, "train a BPE model on a text corpus")
    p.add_argument("--corpus", help="training text, one sentence per line")
    p.add_argument("--vocab-size", type=int, dest="vocab_size",
                   help="total vocabulary budget including specials and alphabet")
    p.add_argument("--out", help="model JSON output path")
    p.add_argument("--marker", help="word-initial marker character")
    p.add_argument("--specials", help="comma-separated special tokens (UNK,BOS,EOS,PAD)")

    p = add("tokenize", _cmd_tokenize, "encode text with a saved model")
    p.add_argument("--model", help="model JSON path")
    p.add_argument("--input", help="text to encode, one sentence per line")
    p.add_argument("--out", help="output path, one encoded line per input line")
    p.add_argument("--format", choices=("ids", "tokens"), help="emit ids (default) or token strings")
    p.add_argument("--add-specials", action="store_true", default=None, dest="add_specials",
                   help="bracket each line with BOS/EOS")

    p = add("morphscore", _cmd_morphscore, "score morphological alignment over a dataset")
    p.add_argument("--model", help="model JSON path")
    p.add_argument("--dataset", help="dataset TSV (word, boundary, lang, source)")
    p.add_argument("--out", help="report CSV output path")

    p = add("build-dataset", _cmd_build_dataset, "derive a boundary dataset from treebank files")
    p.add_argument("--lang", help="language code recorded on every item")
    p.add_argument("--conllu", nargs="*", default=None, help="CoNLL-U input files")
    p.add_argument("--unimorph", nargs="*", default=None, help="UniMorph TSV input files")
    p.add_argument("--seed", type=int, help="sampling seed (default 0)")
    p.add_argument("--out", help="dataset TSV output path")

    p = add("metrics", _cmd_metrics, "tokenization-quality metrics over corpora")
    p.add_argument("--model", help="model JSON path")
    p.add_argument("--corpus", nargs="*", default=None, help="corpus text files")
    p.add_argument("--langs", nargs="*", default=None, help="language codes, one per corpus")
    p.add_argument("--alpha", type=float, help="Renyi order (default 2.5)")
    p.add_argument("--out", help="metrics CSV output path")

    p = add("byte-premium", _cmd_byte_premium, "byte premiums from a parallel corpus")
    p.add_argument("--pivot", help="pivot language code (default eng_latn)")
    p.add_argument("--out", help="premiums CSV output path")
    p.add_argument("files", nargs="*", metavar="LANG=PATH",
                   help="line-aligned parallel corpus files, one per language")

    p = add("scale-corpus", _cmd_scale_corpus, "take a byte-budget prefix of a corpus")
    p.add_argument("--input", help="corpus text file")
    p.add_argument("--budget-bytes", type=int, dest="budget_bytes", help="base budget in bytes")
    p.add_argument("--premium", type=float, help="byte-premium ratio multiplying the budget")
    p.add_argument("--seed", type=int, help="shuffle seed")
    p.add_argument("--shuffle", action="store_true", default=None, help="seeded shuffle before taking the prefix")
    p.add_argument("--out", help="scaled corpus output path")

    p = add("synth", _cmd_synth, "generate a synthetic corpus with gold boundaries")
    p.add_argument("--typology", choices=(synthlang.AGGLUTINATIVE, synthlang.FUSIONAL),
                   help="word-formation strategy to simulate")
    p.add_argument("--n-words", type=int, dest="n_words", help="corpus size in words")
    p.add_argument("--seed", type=int, help="generator seed (default 0)")
    p.add_argument("--out-dir", dest="out_dir", help="directory for corpus.txt, gold.tsv, spec.json")
    p.add_argument("--n-roots", type=int, dest="n_roots", help="distinct roots (default 50)")
    p.add_argument("--root-len", dest="root_len", help="MIN:MAX root length (default 3:6)")
    p.add_argument("--affix-len", dest="affix_len", help="MIN:MAX affix length (default 2:4)")
    p.add_argument("--n-slots", type=int, dest="n_slots", help="agglutinative affix slots (default 3)")
    p.add_argument("--n-affixes-per-slot", type=int, dest="n_affixes_per_slot",
                   help="inventory size per slot (default 8)")
    p.add_argument("--paradigm-size", type=int, dest="paradigm_size",
                   help="fusional portmanteau inventory size (default 24)")
    p.add_argument("--alphabet", help="characters to build strings from")
    p.add_argument("--zipf-s", type=float, dest="zipf_s", help="root frequency skew (default 1.0)")
    p.add_argument("--words-per-line", type=int, dest="words_per_line", help="line width in words")
    p.add_argument("--lang", help="language code recorded on gold items")

    p = add("analyze", _cmd_analyze, "run regressions / t-tests over a records CSV")
    p.add_argument("--data", help="records CSV (lang, morph_type, metric columns)")
    p.add_argument("--formula", help="OLS spec, e.g. 'perplexity ~ morph_type + size'")
    p.add_argument("--reduced", help="reduced OLS spec for the nested F-test")
    p.add_argument("--welch", help="t-test spec, e.g. 'score ~ morph_type'")
    p.add_argument("--pooled", action="store_true", default=None,
                   help="pooled-variance t-test instead of Welch")
    p.add_argument("--out", help="results JSON output path")

    p = add("report", _cmd_report, "summary JSON/CSV plus SVG charts from metric CSVs")
    p.add_argument("--out-dir", dest="out_dir", help="directory for summary and figures")
    p.add_argument("csvs", nargs="*", metavar="CSV",
                   help="records CSVs with lang, morph_type, and metric columns")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints usage itself
        return int(exc.code) if exc.code else EXIT_OK
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"morphalign {args.cmd}: error[usage]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, FormatError, OSError) as exc:
        print(f"morphalign {args.cmd}: error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, StatError) as exc:
        print(f"morphalign {args.cmd}: error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_STAT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
