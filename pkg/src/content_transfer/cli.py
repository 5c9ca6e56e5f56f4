"""Command-line entry point for reproducible batch runs.

Exit codes: 0 success, 1 validation/acceptance failure, 2 argument or IO
error. Every stochastic command is deterministic given its flags and seed.
All flags can also be set through environment variables prefixed CT_
(e.g. CT_PAIRS_SEED).
"""

from __future__ import annotations

import sys

import click
import numpy as np

from . import benchmark, formats, graph, synthgen, textvec
from .estimators import EstimatorConfig
from .synthgen import PlantedEdge, PlantedNetworkSpec
from .triples import Event


def _io_error(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _opt_k(f):
    return click.option("--k", default=3, show_default=True, help="Nearest-neighbor order.")(f)


def _opt_estimator(f):
    f = click.option("--nc", default=100, show_default=True, help="Subsample size per estimate.")(f)
    f = click.option("--jitter", default=1e-10, show_default=True, help="Tie-breaking noise intensity.")(f)
    f = _opt_k(f)
    return f


@click.group()
def main():
    """Directed content-transfer estimation between timestamped streams."""


@main.command("vectorize")
@click.argument("raw_jsonl", type=click.Path(exists=True, dir_okay=False))
@click.argument("vector_jsonl", type=click.Path(dir_okay=False, writable=True))
@click.option("--dim", default=150, show_default=True, help="Projection output dimension.")
@click.option("--seed", default=0, show_default=True)
def cmd_vectorize(raw_jsonl, vector_jsonl, dim, seed):
    """Preprocess raw text events, TF-IDF weight them, and project to
    dense vectors."""
    try:
        docs = formats.read_raw_jsonl(raw_jsonl)
    except (OSError, formats.FormatError) as exc:
        _io_error(str(exc))
    kept_docs, token_lists = [], []
    for doc in docs:
        tokens = textvec.preprocess(doc)
        if tokens is not None:
            kept_docs.append(doc)
            token_lists.append(tokens)
    if not kept_docs:
        formats.write_vector_jsonl(vector_jsonl, [])
        click.echo("documents=0 vocabulary=0")
        return
    sparse, vocab = textvec.tfidf(token_lists)
    dense = textvec.project(sparse, len(vocab), dim, seed)
    events = [
        Event(user=doc.user, time=doc.time, vector=vec)
        for doc, vec in zip(kept_docs, dense)
    ]
    formats.write_vector_jsonl(vector_jsonl, events)
    click.echo(f"documents={vocab.n_documents} vocabulary={len(vocab)}")


@main.command("pairs")
@click.argument("vector_jsonl", type=click.Path(exists=True, dir_okay=False))
@click.argument("edge_csv", type=click.Path(dir_okay=False, writable=True))
@_opt_estimator
@click.option("--seed", default=0, show_default=True)
@click.option("--min-triples", default=100, show_default=True)
@click.option("--bins", default=20, show_default=True, help="Histogram bin count.")
@click.option("--histogram", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Histogram CSV path (default: EDGE_CSV with .hist.csv suffix).")
@click.option("--threads", default=1, show_default=True)
def cmd_pairs(vector_jsonl, edge_csv, k, nc, jitter, seed, min_triples, bins, histogram, threads):
    """Score all ordered user pairs by transfer entropy and time-delayed
    MI; write the edge CSV and score histogram."""
    try:
        events = formats.read_vector_jsonl(vector_jsonl)
    except (OSError, formats.FormatError) as exc:
        _io_error(str(exc))
    streams = formats.streams_from_events(events)
    if len(streams) < 2:
        _io_error(f"need at least 2 users, found {len(streams)}")
    cfg = EstimatorConfig(k=k, jitter_intensity=jitter, subsample_size=nc, seed=seed)
    scores = graph.score_all_pairs(streams, cfg, min_triples=min_triples, threads=threads)
    formats.write_edge_csv(edge_csv, scores)
    hist_path = histogram or f"{edge_csv}.hist.csv"
    formats.write_histogram_csv(hist_path, graph.export_histogram(scores, bins))
    click.echo(f"scored_edges={len(scores)}")


@main.command("validate")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default="validation.csv",
              show_default=True, help="Convergence-curve CSV output.")
@_opt_k
@click.option("--trials", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
def cmd_validate(out, k, trials, seed):
    """Run the self-contained Gaussian validation suite against the
    analytic oracle and write its convergence curves."""
    oracle = synthgen.analytic_gaussian_cmi(synthgen.reference_spec())
    points = benchmark.convergence_table(["cmi", "permuted"], [100, 200, 400, 1000, 2000], trials, k=k, seed=seed)
    points += benchmark.convergence_table(["padded", "padded_strong"], [100, 200, 400], trials, k=k, seed=seed)
    formats.write_convergence_csv(out, points)
    by_key = {(p.scenario, p.n): p for p in points}
    checks = [
        ("gaussian_cmi_convergence", abs(by_key[("cmi", 2000)].mean - oracle) < 0.05),
        ("permutation_null", abs(by_key[("permuted", 1000)].mean) < 0.05),
        ("noise_padding", oracle - 0.10 <= by_key[("padded", 400)].mean <= oracle + 0.05),
        ("noise_padding_strong", by_key[("padded_strong", 400)].mean < 0.1),
    ]
    failed = False
    for name, ok in checks:
        click.echo(f"{'PASS' if ok else 'FAIL'} {name}")
        failed = failed or not ok
    click.echo(f"oracle_cmi={formats.FLOAT_FMT.format(oracle)} curves={out}")
    if failed:
        sys.exit(1)


def _parse_edges(edge_specs):
    edges = []
    for text in edge_specs:
        parts = text.split(":")
        if len(parts) != 3:
            raise click.BadParameter(f"edge {text!r} must be SOURCE:TARGET:P", param_hint="--edge")
        try:
            p = float(parts[2])
        except ValueError:
            raise click.BadParameter(f"edge probability {parts[2]!r} is not a number", param_hint="--edge")
        edges.append(PlantedEdge(source=parts[0], target=parts[1], copy_probability=p))
    return tuple(edges)


@main.command("synth")
@click.argument("events_jsonl", type=click.Path(dir_okay=False, writable=True))
@click.argument("truth_csv", type=click.Path(dir_okay=False, writable=True))
@click.option("--users", default=10, show_default=True)
@click.option("--events", default=300, show_default=True, help="Events per user.")
@click.option("--topic-dim", default=8, show_default=True)
@click.option("--noise", default=0.1, show_default=True, help="Copy noise scale.")
@click.option("--edge", "edge_specs", multiple=True, help="Planted edge SOURCE:TARGET:P (repeatable).")
@click.option("--seed", default=0, show_default=True)
def cmd_synth(events_jsonl, truth_csv, users, events, topic_dim, noise, edge_specs, seed):
    """Generate planted-influence streams plus their ground-truth edges."""
    try:
        spec = PlantedNetworkSpec(
            n_users=users,
            edges=_parse_edges(edge_specs),
            topic_dim=topic_dim,
            events_per_user=events,
            noise_scale=noise,
            seed=seed,
        )
    except ValueError as exc:
        _io_error(f"invalid spec: {exc}")
    streams = synthgen.planted_streams(spec)
    formats.write_vector_jsonl(events_jsonl, formats.events_from_streams(streams))
    formats.write_truth_csv(
        truth_csv, [(e.source, e.target, e.copy_probability) for e in spec.edges]
    )
    click.echo(f"users={users} events={users * events} planted_edges={len(spec.edges)}")


@main.command("eval")
@click.argument("edge_csv", type=click.Path(exists=True, dir_okay=False))
@click.argument("truth_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Also write the evaluation JSON to this path.")
@click.option("--cutoff", default=100, show_default=True, help="Precision/recall cutoff.")
def cmd_eval(edge_csv, truth_csv, out, cutoff):
    """Evaluate scored edges against labeled ground truth by AUC; only
    scored edges enter the evaluation."""
    try:
        scores = formats.read_edge_csv(edge_csv)
        truth = formats.read_truth_csv(truth_csv)
    except (OSError, formats.FormatError) as exc:
        _io_error(str(exc))
    values = np.array([e.transfer_entropy for e in scores])
    labels = np.array([truth.get(e.key, 0.0) > 0.0 for e in scores])
    if len(values) == 0 or not labels.any():
        _io_error("no positive-labeled edges among the scored edges")
    evaluation = graph.auc(values, labels, cutoff=cutoff)
    line = (
        f'{{"auc": {formats.FLOAT_FMT.format(evaluation.auc)}, '
        f'"null_stderr": {formats.FLOAT_FMT.format(evaluation.null_stderr)}, '
        f'"precision_at_k": {formats.FLOAT_FMT.format(evaluation.precision_at_k)}, '
        f'"recall_at_k": {formats.FLOAT_FMT.format(evaluation.recall_at_k)}, '
        f'"n_pos": {evaluation.n_pos}, "n_neg": {evaluation.n_neg}}}'
    )
    click.echo(line)
    if out:
        formats.write_eval_json(out, evaluation)


def run():
    main(auto_envvar_prefix="CT")


if __name__ == "__main__":
    run()
