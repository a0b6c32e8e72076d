"""Candidate enumeration, ranking, and corpus feature extraction."""

from __future__ import annotations

import csv
import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO, TypeVar

from lifter.context import ProofContext, is_recursive, load_context_file
from lifter.errors import CorpusError, LifterError
from lifter.evaluator import Evaluator, InductArgs, parse_invocation
from lifter.parser import load_assertion_file
from lifter.syntax import Assertion
from lifter.terms import Const, Free, Goal, iter_occurrences, load_goal

Suite = Sequence[tuple[str, Assertion]]

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class Limits:
    max_ind_terms: int = 2
    max_arbitrary: int = 1
    # Rule-bearing candidates pass one induction term per argument of the
    # rule's constant, as functional induction expects.
    match_rule_arity: bool = True

    def __post_init__(self) -> None:
        if self.max_ind_terms < 1 or self.max_arbitrary < 0:
            raise ValueError("need max_ind_terms >= 1 and max_arbitrary >= 0")


@dataclass(frozen=True)
class Candidate:
    args: InductArgs
    features: tuple[tuple[str, bool], ...] = ()
    score: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "score", sum(v for _, v in self.features))

    @property
    def bits(self) -> str:
        return "".join("1" if v else "0" for _, v in self.features)


def load_suite(directory: str | os.PathLike) -> list[tuple[str, Assertion]]:
    """All ``*.lifter`` files of a directory in filename order, keyed by stem."""
    paths = sorted(Path(directory).glob("*.lifter"))
    return [(p.stem, load_assertion_file(p)) for p in paths]


def _map(fn: Callable[[T], R], items: Sequence[T], workers: int) -> list[R]:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def candidate_rules(goal: Goal, ctx: ProofContext) -> list[tuple[str, int]]:
    """(rule, arity of its constant) for recursive constants, by first occurrence in the goal."""
    seen: dict[str, None] = {}
    for _, sub in iter_occurrences(goal.statement):
        if isinstance(sub, Const) and is_recursive(ctx, sub.name):
            seen.setdefault(sub.name, None)
    return [(rule, ctx.constants[c].arity) for c in seen for rule in ctx.constants[c].derived_rules]


def enumerate_candidates(goal: Goal, ctx: ProofContext, limits: Limits = Limits()) -> list[InductArgs]:
    frees = []
    for _, sub in iter_occurrences(goal.statement):
        if isinstance(sub, Free) and sub not in frees:
            frees.append(sub)
    if not frees:
        return []

    out: dict[InductArgs, None] = {}
    options: list[tuple[str | None, int | None]] = [(None, None)]
    options += [(rule, arity if limits.match_rule_arity else None) for rule, arity in candidate_rules(goal, ctx)]
    for rule, arity in options:
        sizes = range(1, min(limits.max_ind_terms, len(frees)) + 1)
        if arity is not None:
            sizes = [arity] if arity in sizes else []
        for size in sizes:
            for ind in itertools.permutations(range(len(frees)), size):
                rest = [i for i in range(len(frees)) if i not in ind]
                for k in range(min(limits.max_arbitrary, len(rest)) + 1):
                    for arb in itertools.combinations(rest, k):
                        args = InductArgs(
                            tuple(frees[i] for i in ind),
                            tuple(frees[i] for i in arb),
                            (rule,) if rule else (),
                        )
                        out.setdefault(args, None)
    return list(out)


def score_candidate(args: InductArgs, suite: Suite, goal: Goal, ctx: ProofContext) -> Candidate:
    ev = Evaluator(goal, ctx, args)
    return Candidate(args, tuple((name, ev.holds(a)) for name, a in suite))


def suggest(
    goal: Goal, ctx: ProofContext, suite: Suite, limits: Limits = Limits(), *, workers: int = 1
) -> list[Candidate]:
    """Every candidate, best first; ties keep enumeration order."""
    candidates = enumerate_candidates(goal, ctx, limits)
    scored = _map(lambda args: score_candidate(args, suite, goal, ctx), candidates, workers)
    return sorted(scored, key=lambda c: -c.score)


# ---------------------------------------------------------------------------
# Corpus batch evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    goal_file: Path
    context_file: Path
    induct: str
    label: bool | None = None


@dataclass(frozen=True)
class Row:
    id: str
    label: bool | None
    features: tuple[bool, ...] | None = None
    error: str = ""


def load_corpus(path: str | os.PathLike) -> list[CorpusRecord]:
    """Line-delimited JSON; file paths are relative to the corpus file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc.strerror}") from None
    base = path.parent
    records: list[CorpusRecord] = []
    ids: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON: {exc.msg}", lineno, exc.colno) from None
        missing = [k for k in ("id", "goal_file", "context_file", "induct") if k not in obj]
        if missing:
            raise CorpusError(f"record lacks {', '.join(missing)}", lineno, 1)
        rid = str(obj["id"])
        if rid in ids:
            raise CorpusError(f"duplicate record id {rid!r}", lineno, 1)
        ids.add(rid)
        label = obj.get("label")
        if label is not None and not isinstance(label, bool):
            raise CorpusError(f"label of {rid!r} must be a boolean", lineno, 1)
        records.append(CorpusRecord(rid, base / obj["goal_file"], base / obj["context_file"], obj["induct"], label))
    return records


class _Loader:
    """Caches contexts and goals by path; failures are re-raised per record."""

    def __init__(self) -> None:
        self.contexts: dict[Path, ProofContext | Exception] = {}
        self.goals: dict[tuple[Path, Path], Goal | Exception] = {}

    def _cached(self, table: dict, key, make: Callable):
        if key not in table:
            try:
                table[key] = make()
            except (LifterError, OSError) as exc:
                table[key] = exc
        value = table[key]
        if isinstance(value, Exception):
            raise value
        return value

    def context(self, path: Path) -> ProofContext:
        return self._cached(self.contexts, path, lambda: load_context_file(path))

    def goal(self, goal_path: Path, ctx_path: Path) -> Goal:
        ctx = self.context(ctx_path)
        return self._cached(
            self.goals, (goal_path, ctx_path), lambda: load_goal(goal_path.read_text(encoding="utf-8"), ctx.signature)
        )


def _describe(exc: Exception) -> str:
    if isinstance(exc, OSError):
        return f"cannot read {exc.filename}: {exc.strerror}"
    return f"{type(exc).__name__}: {exc}"


def batch_evaluate(records: Iterable[CorpusRecord], suite: Suite, *, workers: int = 1) -> list[Row]:
    """One row per record in corpus order; a failing record becomes an error row."""
    loader = _Loader()

    def run(record: CorpusRecord) -> Row:
        try:
            ctx = loader.context(record.context_file)
            goal = loader.goal(record.goal_file, record.context_file)
            args = parse_invocation(record.induct, goal, ctx)
            ev = Evaluator(goal, ctx, args)
            return Row(record.id, record.label, tuple(ev.holds(a) for _, a in suite))
        except (LifterError, OSError) as exc:
            return Row(record.id, record.label, None, _describe(exc))

    return _map(run, list(records), workers)


def write_feature_matrix(rows: Iterable[Row], assertion_ids: Sequence[str], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "label", *assertion_ids, "error"])
    for row in rows:
        label = "" if row.label is None else int(row.label)
        feats = [int(v) for v in row.features] if row.features is not None else [""] * len(assertion_ids)
        writer.writerow([row.id, label, *feats, row.error])
