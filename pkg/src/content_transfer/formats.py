"""File formats: JSONL event streams, edge/histogram/ground-truth CSVs and
the evaluation JSON. All numeric output uses fixed decimal formats so
reruns diff cleanly.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone

import numpy as np

from .graph import EdgeScore, RankingEvaluation
from .textvec import Document
from .triples import Event, EventStream

FLOAT_FMT = "{:.6f}"


class FormatError(ValueError):
    """Malformed input file; message carries the offending line number."""


def _parse_time(value) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        dt = datetime.fromisoformat(value)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return dt.timestamp()
    raise ValueError(f"unsupported time value {value!r}")


def _iter_jsonl(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None


def read_raw_jsonl(path) -> list[Document]:
    """Raw events: one {"user", "time", "text"} object per line."""
    docs = []
    for lineno, obj in _iter_jsonl(path):
        try:
            docs.append(Document(user=str(obj["user"]), time=_parse_time(obj["time"]), text=str(obj["text"])))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from None
    return docs


def read_vector_jsonl(path) -> list[Event]:
    """Vector events: one {"user", "time", "vector"} object per line."""
    events = []
    for lineno, obj in _iter_jsonl(path):
        try:
            events.append(
                Event(
                    user=str(obj["user"]),
                    time=_parse_time(obj["time"]),
                    vector=np.asarray(obj["vector"], dtype=np.float64),
                )
            )
        except (KeyError, ValueError) as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from None
    return events


def write_vector_jsonl(path, events: list[Event]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in events:
            obj = {
                "user": e.user,
                "time": float(FLOAT_FMT.format(e.time)),
                "vector": [float(FLOAT_FMT.format(v)) for v in e.vector],
            }
            fh.write(json.dumps(obj) + "\n")


def streams_from_events(events: list[Event]) -> list[EventStream]:
    """Group events by user into sorted streams, ordered by user name."""
    by_user: dict[str, list[Event]] = {}
    for e in events:
        by_user.setdefault(e.user, []).append(e)
    return [EventStream(user=u, events=tuple(evs)) for u, evs in sorted(by_user.items())]


def events_from_streams(streams: list[EventStream]) -> list[Event]:
    merged = [e for s in streams for e in s.events]
    merged.sort(key=lambda e: (e.time, e.user))
    return merged


def write_edge_csv(path, scores: list[EdgeScore]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source", "target", "te", "mi", "n_triples"])
        for e in scores:
            writer.writerow(
                [
                    e.source,
                    e.target,
                    FLOAT_FMT.format(e.transfer_entropy),
                    FLOAT_FMT.format(e.time_delayed_mi),
                    e.n_triples,
                ]
            )


def read_edge_csv(path) -> list[EdgeScore]:
    scores = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.DictReader(fh), start=2):
            try:
                scores.append(
                    EdgeScore(
                        source=row["source"],
                        target=row["target"],
                        transfer_entropy=float(row["te"]),
                        time_delayed_mi=float(row["mi"]),
                        n_triples=int(row["n_triples"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from None
    return scores


def write_histogram_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bin_lo", "bin_hi", "count"])
        for lo, hi, count in rows:
            writer.writerow([FLOAT_FMT.format(lo), FLOAT_FMT.format(hi), count])


def write_truth_csv(path, edges) -> None:
    """Ground-truth planted edges: (source, target, copy probability)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source", "target", "p"])
        for source, target, p in edges:
            writer.writerow([source, target, FLOAT_FMT.format(p)])


def read_truth_csv(path) -> dict[tuple[str, str], float]:
    truth = {}
    with open(path, "r", newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.DictReader(fh), start=2):
            try:
                truth[(row["source"], row["target"])] = float(row["p"])
            except (KeyError, TypeError, ValueError) as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from None
    return truth


def write_eval_json(path, evaluation: RankingEvaluation) -> None:
    obj = {
        "auc": float(FLOAT_FMT.format(evaluation.auc)),
        "n_pos": evaluation.n_pos,
        "n_neg": evaluation.n_neg,
        "null_stderr": float(FLOAT_FMT.format(evaluation.null_stderr)),
        "precision_at_k": float(FLOAT_FMT.format(evaluation.precision_at_k)),
        "recall_at_k": float(FLOAT_FMT.format(evaluation.recall_at_k)),
        "cutoff": evaluation.cutoff,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_convergence_csv(path, points) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["curve", "n", "mean", "ci_lo", "ci_hi", "trials"])
        for p in points:
            writer.writerow(
                [
                    p.scenario,
                    p.n,
                    FLOAT_FMT.format(p.mean),
                    FLOAT_FMT.format(p.ci_lo),
                    FLOAT_FMT.format(p.ci_hi),
                    p.trials,
                ]
            )
