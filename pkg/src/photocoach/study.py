"""Replay of the bundled user-study tables.

Two tables ship with the package: per-subject scores before and after
guided reshoots, and per-pair agreement judgments from three reviewers.
The replay recomputes every aggregate from the raw rows and compares them
against the claims file, flagging any claim the rows do not support.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ShapeError

SCORE_COLUMNS = ("subject", "before", "after")
CLAIM_TOLERANCE = 0.05  # claims are quoted to one decimal place


def _study_path(name: str):
    return resources.files("photocoach").joinpath(f"data/study/{name}")


@dataclass(frozen=True)
class ScoreRow:
    subject: int
    before: float
    after: float

    @property
    def diff(self) -> float:
        return self.after - self.before


@dataclass(frozen=True)
class ScoreReplay:
    rows: tuple[ScoreRow, ...]

    @property
    def count(self) -> int:
        return len(self.rows)

    @property
    def mean_diff(self) -> float:
        return sum(r.diff for r in self.rows) / len(self.rows)

    @property
    def max_diff(self) -> float:
        return max(r.diff for r in self.rows)

    @property
    def improved_count(self) -> int:
        return sum(1 for r in self.rows if r.diff > 0)

    @property
    def improved_rate_percent(self) -> float:
        return 100.0 * self.improved_count / len(self.rows)


@dataclass(frozen=True)
class RaterReplay:
    name: str
    agree_count: int
    count: int

    @property
    def rate_percent(self) -> float:
        return 100.0 * self.agree_count / self.count


@dataclass(frozen=True)
class AgreementReplay:
    raters: tuple[RaterReplay, ...]

    @property
    def overall_agree(self) -> int:
        return sum(r.agree_count for r in self.raters)

    @property
    def overall_count(self) -> int:
        return sum(r.count for r in self.raters)

    @property
    def overall_rate_percent(self) -> float:
        return 100.0 * self.overall_agree / self.overall_count


@dataclass(frozen=True)
class ClaimCheck:
    claim: str
    claimed: float
    computed: float
    matches: bool


def load_score_table(path: str | Path | None = None) -> ScoreReplay:
    source = open(path, newline="") if path is not None else _study_path("before_after.csv").open()
    with source as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != SCORE_COLUMNS:
            raise ShapeError(f"score table header must be {','.join(SCORE_COLUMNS)}")
        rows = [ScoreRow(int(r[0]), float(r[1]), float(r[2])) for r in reader if r]
    if not rows:
        raise ShapeError("score table has no rows")
    return ScoreReplay(tuple(rows))


def load_agreement_table(path: str | Path | None = None) -> AgreementReplay:
    source = open(path, newline="") if path is not None else _study_path("agreement.csv").open()
    with source as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2 or header[0] != "pair":
            raise ShapeError("agreement table header must be pair,<rater>,...")
        names = header[1:]
        counts = [0] * len(names)
        total = 0
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise ShapeError(f"agreement row {row!r} does not match header width")
            total += 1
            for i, cell in enumerate(row[1:]):
                if cell not in ("0", "1"):
                    raise ShapeError(f"agreement cells must be 0 or 1, got {cell!r}")
                counts[i] += int(cell)
    if total == 0:
        raise ShapeError("agreement table has no rows")
    return AgreementReplay(tuple(RaterReplay(n, c, total) for n, c in zip(names, counts)))


def load_claims(path: str | Path | None = None) -> dict:
    if path is None:
        return json.loads(_study_path("claims.json").read_text())
    with open(path) as fh:
        return json.load(fh)


def check_claims(scores: ScoreReplay, agreement: AgreementReplay, claims: dict) -> list[ClaimCheck]:
    """Compare each published aggregate with the value recomputed from rows."""
    checks: list[ClaimCheck] = []

    def add(claim: str, claimed: float, computed: float):
        checks.append(
            ClaimCheck(claim, claimed, computed, abs(claimed - computed) <= CLAIM_TOLERANCE)
        )

    sc = claims.get("score_change", {})
    if "mean_gain" in sc:
        add("score_change.mean_gain", float(sc["mean_gain"]), scores.mean_diff)
    if "improved_rate_percent" in sc:
        add(
            "score_change.improved_rate_percent",
            float(sc["improved_rate_percent"]),
            scores.improved_rate_percent,
        )
    if "max_gain" in sc:
        add("score_change.max_gain", float(sc["max_gain"]), scores.max_diff)

    ag = claims.get("agreement", {})
    by_name = {r.name: r for r in agreement.raters}
    for name, claimed in ag.get("counts", {}).items():
        if name in by_name:
            add(f"agreement.counts.{name}", float(claimed), float(by_name[name].agree_count))
    for name, claimed in ag.get("rates_percent", {}).items():
        if name in by_name:
            add(f"agreement.rates_percent.{name}", float(claimed), by_name[name].rate_percent)
    if "overall_rate_percent" in ag:
        add(
            "agreement.overall_rate_percent",
            float(ag["overall_rate_percent"]),
            agreement.overall_rate_percent,
        )
    return checks


def replay_report(scores: ScoreReplay, agreement: AgreementReplay, claims: dict) -> dict:
    """Everything cmd_stats prints, as one JSON-serializable dict."""
    return {
        "score_change": {
            "rows": [
                {"subject": r.subject, "before": r.before, "after": r.after, "diff": r.diff}
                for r in scores.rows
            ],
            "count": scores.count,
            "mean_diff": scores.mean_diff,
            "max_diff": scores.max_diff,
            "improved_count": scores.improved_count,
            "improved_rate_percent": scores.improved_rate_percent,
        },
        "agreement": {
            "raters": [
                {
                    "name": r.name,
                    "agree_count": r.agree_count,
                    "count": r.count,
                    "rate_percent": r.rate_percent,
                }
                for r in agreement.raters
            ],
            "overall_agree": agreement.overall_agree,
            "overall_count": agreement.overall_count,
            "overall_rate_percent": agreement.overall_rate_percent,
        },
        "claims": [
            {
                "claim": c.claim,
                "claimed": c.claimed,
                "computed": c.computed,
                "matches": c.matches,
            }
            for c in check_claims(scores, agreement, claims)
        ],
    }
