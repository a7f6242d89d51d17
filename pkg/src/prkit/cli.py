"""``pr`` command-line interface.

One subcommand per experiment family: ``compute`` (precision/recall on two
embedding files), ``realism``, ``interp``, ``synth modes``,
``synth truncate``, ``pareto`` and ``convert``. Every output is
deterministic given identical inputs, parameters and seed: JSON results
embed a run manifest, file-based CSV results get a ``<out>.manifest.json``
sidecar. Exit codes: 0 success, 1 validation/usage error, 2 I/O error.
"""
from __future__ import annotations

import contextlib
import os
import sys
import time

import click
import numpy as np
from click.core import ParameterSource

from . import __version__
from .exceptions import FormatError, ValidationError
from .embeddings import export_csv, import_csv, read_embeddings, write_embeddings
from .metric import DEFAULT_BLOCK_SIZE, DEFAULT_K, precision_recall
from .realism import RealismScorer, interpolation_path_stats
from .reporting import RunManifest, dumps_json, format_csv, sha256_file
from .synthetic import (
    ScoredPoint,
    SyntheticMapping,
    TruncationStrategy,
    fit_gaussian,
    mode_experiment,
    pareto_frontier,
    truncation_sweep,
)
from .synthetic.truncation import parse_strategy_kind

DEFAULT_MAX_SAMPLES = 50_000


def _thread_limits(threads: int):
    if threads and threads > 0:
        from threadpoolctl import threadpool_limits

        return threadpool_limits(limits=threads)
    return contextlib.nullcontext()


def _load_capped(path, max_samples: int, seed_seq) -> np.ndarray:
    X = read_embeddings(path)
    if max_samples < 1:
        raise ValidationError(f"--max-samples must be >= 1, got {max_samples}")
    if X.shape[0] > max_samples:
        rng = np.random.default_rng(seed_seq)
        idx = np.sort(rng.choice(X.shape[0], size=max_samples, replace=False))
        X = X[idx]
    return X


def _input_record(**paths) -> dict:
    return {
        name: {"path": str(path), "sha256": sha256_file(path)}
        for name, path in paths.items()
    }


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(document: dict, manifest: RunManifest, fmt: str, out, header, rows) -> None:
    if fmt == "json":
        document["manifest"] = manifest.to_dict()
        _write_text(dumps_json(document), out)
    else:
        _write_text(format_csv(header, rows), out)
        if out is not None:
            _write_text(dumps_json({"manifest": manifest.to_dict()}), f"{out}.manifest.json")


def read_config(path) -> dict:
    """Parse a flat key=value config file; '#' starts a comment."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}: expected key=value at line {lineno}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _apply_config(ctx, config_path, casts: dict) -> dict:
    """Resolve parameters as defaults < config file < explicit flags."""
    merged = {name: ctx.params[name] for name in casts}
    if config_path is None:
        return merged
    cfg = read_config(config_path)
    unknown = sorted(set(cfg) - set(casts))
    if unknown:
        raise ValidationError(
            f"{config_path}: unknown config keys {', '.join(unknown)}"
        )
    for name, cast in casts.items():
        if name in cfg and ctx.get_parameter_source(name) == ParameterSource.DEFAULT:
            try:
                merged[name] = cast(cfg[name])
            except ValueError:
                raise ValidationError(
                    f"{config_path}: bad value {cfg[name]!r} for key {name}"
                ) from None
    return merged


def _threads_option(f):
    return click.option(
        "--threads",
        type=int,
        default=0,
        envvar="PR_THREADS",
        show_default=True,
        help="Thread cap for internal math kernels (0 = all cores).",
    )(f)


def _format_option(default):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default=default,
        show_default=True,
        help="Output format.",
    )


@click.group()
@click.version_option(version=__version__, prog_name="pr")
def cli():
    """Precision/recall and realism evaluation for generative models."""


@cli.command()
@click.option("--real", "real_path", required=True, help="EPR1 file of real-sample features.")
@click.option("--gen", "gen_path", required=True, help="EPR1 file of generated-sample features.")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True, help="Neighborhood size.")
@click.option("--max-samples", type=int, default=DEFAULT_MAX_SAMPLES, show_default=True,
              help="Cap per side; larger inputs are down-sampled by seed.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--block-size", type=int, default=DEFAULT_BLOCK_SIZE, show_default=True)
@_format_option("json")
@click.option("--out", default=None, help="Output path (stdout when omitted).")
@_threads_option
def compute(real_path, gen_path, k, max_samples, seed, block_size, fmt, out, threads):
    """Precision and recall of one embedding set against another."""
    started = time.perf_counter()
    seq_real, seq_gen = np.random.SeedSequence(seed).spawn(2)
    with _thread_limits(threads):
        real = _load_capped(real_path, max_samples, seq_real)
        gen = _load_capped(gen_path, max_samples, seq_gen)
        result = precision_recall(real, gen, k=k, block_size=block_size)
    manifest = RunManifest(
        command="compute",
        version=__version__,
        seed=seed,
        parameters={
            "k": k,
            "max_samples": max_samples,
            "block_size": block_size,
            "format": fmt,
        },
        inputs=_input_record(real=real_path, gen=gen_path),
        duration_seconds=time.perf_counter() - started,
    )
    document = {"command": "compute", **result.to_dict()}
    header = ["precision", "recall", "k", "n_real", "n_gen"]
    rows = [[result.precision, result.recall, result.k, result.n_real, result.n_gen]]
    _emit(document, manifest, fmt, out, header, rows)


@cli.command()
@click.option("--real", "real_path", required=True, help="EPR1 file of reference features.")
@click.option("--queries", "queries_path", required=True, help="EPR1 file of query features.")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--prune/--no-prune", default=True, show_default=True,
              help="Discard the half of the hyperspheres with the largest radii.")
@click.option("--block-size", type=int, default=DEFAULT_BLOCK_SIZE, show_default=True)
@_format_option("csv")
@click.option("--out", default=None)
@_threads_option
def realism(real_path, queries_path, k, prune, block_size, fmt, out, threads):
    """Per-sample realism scores (CSV: index,value; 'inf' for coincident queries)."""
    started = time.perf_counter()
    with _thread_limits(threads):
        reference = read_embeddings(real_path)
        queries = read_embeddings(queries_path)
        scorer = RealismScorer(k=k, prune=prune, block_size=block_size).fit(reference)
        scores = scorer.score_samples(queries)
    manifest = RunManifest(
        command="realism",
        version=__version__,
        seed=None,
        parameters={"k": k, "prune": prune, "block_size": block_size, "format": fmt},
        inputs=_input_record(real=real_path, queries=queries_path),
        duration_seconds=time.perf_counter() - started,
    )
    document = {"command": "realism", "count": len(scores),
                "scores": [float(s) for s in scores]}
    rows = [[i, float(s)] for i, s in enumerate(scores)]
    _emit(document, manifest, fmt, out, ["index", "value"], rows)


@cli.command()
@click.option("--real", "real_path", required=True, help="EPR1 file of reference features.")
@click.option("--a", "a_path", required=True, help="EPR1 file of path start points.")
@click.option("--b", "b_path", required=True, help="EPR1 file of path end points (same N as --a).")
@click.option("--steps", type=int, default=20, show_default=True)
@click.option("--r-threshold", type=float, default=0.9, show_default=True)
@click.option("--frac-threshold", type=float, default=0.25, show_default=True)
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--prune/--no-prune", default=True, show_default=True)
@click.option("--block-size", type=int, default=DEFAULT_BLOCK_SIZE, show_default=True)
@_format_option("json")
@click.option("--out", default=None)
@_threads_option
def interp(real_path, a_path, b_path, steps, r_threshold, frac_threshold, k, prune,
           block_size, fmt, out, threads):
    """Stray-path statistics for linear interpolation between endpoint pairs."""
    started = time.perf_counter()
    with _thread_limits(threads):
        reference = read_embeddings(real_path)
        a = read_embeddings(a_path)
        b = read_embeddings(b_path)
        scorer = RealismScorer(k=k, prune=prune, block_size=block_size).fit(reference)
        report = interpolation_path_stats(
            scorer, a, b, steps=steps,
            realism_threshold=r_threshold,
            intermediate_fraction_threshold=frac_threshold,
        )
    manifest = RunManifest(
        command="interp",
        version=__version__,
        seed=None,
        parameters={"steps": steps, "r_threshold": r_threshold,
                    "frac_threshold": frac_threshold, "k": k, "prune": prune,
                    "block_size": block_size, "format": fmt},
        inputs=_input_record(real=real_path, a=a_path, b=b_path),
        duration_seconds=time.perf_counter() - started,
    )
    fields = {
        "num_paths": report.num_paths,
        "num_steps": report.num_steps,
        "num_strayed": report.num_strayed,
        "stray_fraction": report.stray_fraction,
        "realism_threshold": report.realism_threshold,
        "intermediate_fraction_threshold": report.intermediate_fraction_threshold,
    }
    document = {"command": "interp", **fields}
    _emit(document, manifest, fmt, out, list(fields), [list(fields.values())])


@cli.group()
def synth():
    """Synthetic-data experiments with known ground truth."""


@synth.command("modes")
@click.option("--gen-modes", type=int, required=True, help="Modes covered by the generator (1..10).")
@click.option("--n", type=int, default=10_000, show_default=True, help="Samples per side.")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--sigma", type=float, default=0.3, show_default=True, help="Per-mode spread.")
@click.option("--radius", type=float, default=10.0, show_default=True, help="Mode circle radius.")
@click.option("--config", "config_path", default=None,
              help="key=value file supplying defaults for gen_modes, n, k, seed, sigma, radius.")
@_format_option("json")
@click.option("--out", default=None)
@_threads_option
@click.pass_context
def synth_modes(ctx, gen_modes, n, k, seed, sigma, radius, config_path, fmt, out, threads):
    """Mode drop/invention experiment: 5 real modes, 1..10 generated."""
    started = time.perf_counter()
    params = _apply_config(ctx, config_path, {
        "gen_modes": int, "n": int, "k": int, "seed": int,
        "sigma": float, "radius": float,
    })
    with _thread_limits(threads):
        result = mode_experiment(
            params["gen_modes"], samples_per_side=params["n"], k=params["k"],
            seed=params["seed"], mode_radius=params["radius"], mode_sigma=params["sigma"],
        )
    manifest = RunManifest(
        command="synth modes",
        version=__version__,
        seed=params["seed"],
        parameters={**{key: params[key] for key in ("gen_modes", "n", "k", "sigma", "radius")},
                    "format": fmt},
        inputs={},
        duration_seconds=time.perf_counter() - started,
    )
    document = {"command": "synth modes", "gen_modes": params["gen_modes"],
                **result.to_dict()}
    header = ["gen_modes", "precision", "recall", "k", "n_real", "n_gen"]
    rows = [[params["gen_modes"], result.precision, result.recall,
             result.k, result.n_real, result.n_gen]]
    _emit(document, manifest, fmt, out, header, rows)


@synth.command("truncate")
@click.option("--strategy", required=True, help="A-G or a full name like interpolate-to-mean.")
@click.option("--grid", required=True, help="Comma-separated parameter values.")
@click.option("--n", type=int, default=10_000, show_default=True, help="Samples per side.")
@click.option("--dim", type=int, default=8, show_default=True)
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--config", "config_path", default=None,
              help="key=value file supplying defaults for strategy, grid, n, dim, k, seed.")
@_format_option("csv")
@click.option("--out", default=None)
@_threads_option
@click.pass_context
def synth_truncate(ctx, strategy, grid, n, dim, k, seed, config_path, fmt, out, threads):
    """Truncation sweep on a warped synthetic latent distribution.

    Real and generated sides are mapped pushforwards of a seeded standard
    normal; strategies E/F truncate the pre-image, all others the mapped
    latents.
    """
    started = time.perf_counter()
    params = _apply_config(ctx, config_path, {
        "strategy": str, "grid": str, "n": int, "dim": int, "k": int, "seed": int,
    })
    kind = parse_strategy_kind(params["strategy"])
    try:
        grid_values = [float(tok) for tok in params["grid"].split(",") if tok.strip()]
    except ValueError:
        raise ValidationError(f"could not parse grid {params['grid']!r}") from None
    if not grid_values:
        raise ValidationError("grid must contain at least one value")
    with _thread_limits(threads):
        seq_real, seq_gen = np.random.SeedSequence(params["seed"]).spawn(2)
        mapping = SyntheticMapping.from_seed(params["dim"], params["seed"])
        z_real = np.random.default_rng(seq_real).standard_normal((params["n"], params["dim"]))
        z_gen = np.random.default_rng(seq_gen).standard_normal((params["n"], params["dim"]))
        real = mapping.apply(z_real.astype(np.float32))
        w_gen = mapping.apply(z_gen.astype(np.float32))
        latents = z_gen.astype(np.float32) if kind.needs_mapping else w_gen
        points = truncation_sweep(
            kind, grid_values, real, latents, fit_gaussian(w_gen),
            mapping=mapping, k=params["k"], seed=params["seed"],
        )
    manifest = RunManifest(
        command="synth truncate",
        version=__version__,
        seed=params["seed"],
        parameters={"strategy": kind.value, "grid": sorted(grid_values),
                    "n": params["n"], "dim": params["dim"], "k": params["k"],
                    "format": fmt},
        inputs={},
        duration_seconds=time.perf_counter() - started,
    )
    document = {
        "command": "synth truncate",
        "strategy": kind.value,
        "points": [
            {"parameter": pt.parameter, "precision": pt.result.precision,
             "recall": pt.result.recall, "frechet": pt.frechet}
            for pt in points
        ],
    }
    rows = [[pt.parameter, pt.result.precision, pt.result.recall, pt.frechet]
            for pt in points]
    _emit(document, manifest, fmt, out, ["parameter", "precision", "recall", "frechet"], rows)


@cli.command()
@click.option("--in", "in_path", required=True,
              help="CSV of scored points: id,precision,recall[,<aux>].")
@_format_option("csv")
@click.option("--out", default=None)
def pareto(in_path, fmt, out):
    """Pareto frontier (non-dominated subset) of scored points."""
    started = time.perf_counter()
    points, aux_name = _read_scored_points(in_path)
    frontier = pareto_frontier(points)
    manifest = RunManifest(
        command="pareto",
        version=__version__,
        seed=None,
        parameters={"format": fmt},
        inputs=_input_record(points=in_path),
        duration_seconds=time.perf_counter() - started,
    )
    header = ["id", "precision", "recall"] + ([aux_name] if aux_name else [])
    rows = []
    for pt in frontier:
        row = [pt.id, pt.precision, pt.recall]
        if aux_name:
            row.append(pt.aux if pt.aux is not None else "")
        rows.append(row)
    document = {
        "command": "pareto",
        "points": [
            {"id": pt.id, "precision": pt.precision, "recall": pt.recall,
             **({aux_name: pt.aux} if aux_name else {})}
            for pt in frontier
        ],
    }
    _emit(document, manifest, fmt, out, header, rows)


def _read_scored_points(path):
    import csv as csv_module

    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv_module.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty scored-point file") from None
        header = [cell.strip() for cell in header]
        if header[:3] != ["id", "precision", "recall"] or len(header) > 4:
            raise ValidationError(
                f"{path}: expected header 'id,precision,recall[,<aux>]', got {','.join(header)}"
            )
        aux_name = header[3] if len(header) == 4 else None
        points = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValidationError(
                    f"{path}: row at line {lineno} has {len(row)} cells, expected {len(header)}"
                )
            try:
                aux = float(row[3]) if aux_name and row[3].strip() else None
                points.append(ScoredPoint(id=row[0].strip(), precision=float(row[1]),
                                          recall=float(row[2]), aux=aux))
            except ValueError as exc:
                raise ValidationError(f"{path}: line {lineno}: {exc}") from None
    if not points:
        raise ValidationError(f"{path}: no scored points")
    return points, aux_name


@cli.command()
@click.option("--in", "in_path", required=True, help="Input file (.csv or .epr).")
@click.option("--out", "out_path", required=True, help="Output file (.epr or .csv).")
def convert(in_path, out_path):
    """Convert embeddings between CSV text and the EPR1 binary format."""
    in_ext = os.path.splitext(in_path)[1].lower()
    out_ext = os.path.splitext(out_path)[1].lower()
    binary = (".epr", ".epr1")
    if in_ext == ".csv" and out_ext in binary:
        write_embeddings(import_csv(in_path), out_path)
    elif in_ext in binary and out_ext == ".csv":
        export_csv(read_embeddings(in_path), out_path)
    else:
        raise ValidationError(
            f"cannot infer conversion from {in_path!r} to {out_path!r}; "
            "use a .csv/.epr extension pair"
        )


def main(argv=None) -> int:
    """Entry point with spec'd exit codes: 0 ok, 1 validation, 2 I/O."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.Abort:
        click.echo("Aborted.", err=True)
        return 1
    except click.UsageError as exc:
        if exc.ctx is not None:
            click.echo(exc.ctx.get_usage(), err=True)
        click.echo(f"Error: {exc.format_message()}", err=True)
        return 1
    except ValidationError as exc:
        click.echo(f"Error: {exc}", err=True)
        return 1
    except (FormatError, OSError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
