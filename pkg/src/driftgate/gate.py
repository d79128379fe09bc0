"""Safety gating: calibrate distance thresholds, then accept or defer per frame.

A frame is compared against a reference image from training conditions.  The
gate passes a metric when the measured distance sits on the near side of its
calibrated limit (``hi`` above its floor, ``kl`` and ``db`` below their
ceilings, all strict).  Under the default ``"any"`` policy one passing metric
makes the frame safe; ``"all"`` is the conservative mode requiring every
metric to pass.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .distances import DEFAULT_EPSILON, DistanceReport, distance_report
from .exceptions import DriftGateError, EmptyReferenceSetError
from .histogram import build_histogram
from .image import shift_image, to_space
from .validation import check_image, check_space

POLICIES = ("any", "all")


def check_policy(policy: str) -> str:
    """Normalize a gate policy name to ``'any'`` or ``'all'``."""
    if not isinstance(policy, str) or policy.lower() not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
    return policy.lower()


@dataclass(frozen=True)
class SafetyThresholds:
    """Calibrated per-metric limits defining the trusted band of shifts."""

    hi_min: float
    kl_max: float
    db_max: float
    safe_shift: int
    space: str = "rgb"
    epsilon: float = DEFAULT_EPSILON
    calibrated_at: str = ""
    n_references: int = 0

    def __post_init__(self):
        if not 0.0 <= self.hi_min <= 1.0:
            raise ValueError(f"hi_min must be in [0, 1], got {self.hi_min}")
        if self.kl_max < 0.0:
            raise ValueError(f"kl_max must be >= 0, got {self.kl_max}")
        if self.db_max < 0.0:
            raise ValueError(f"db_max must be >= 0, got {self.db_max}")
        object.__setattr__(self, "space", check_space(self.space))


@dataclass(frozen=True)
class MetricCheck:
    """One metric's measured value, the limit it was held to, and the verdict."""

    value: float
    threshold: float
    passed: bool


@dataclass
class GateDecision:
    """Outcome for one frame: the boolean plus per-metric detail."""

    safe: bool
    per_metric: dict[str, MetricCheck]
    policy: str
    frame: int = 0
    error: str | None = None

    def _value(self, name: str) -> float:
        check = self.per_metric.get(name)
        return check.value if check is not None else math.nan

    @property
    def hi(self) -> float:
        return self._value("hi")

    @property
    def kl(self) -> float:
        return self._value("kl")

    @property
    def db(self) -> float:
        return self._value("db")


def calibrate(
    reference_images: Iterable[np.ndarray],
    safe_shift: int,
    space: str = "rgb",
    epsilon: float = DEFAULT_EPSILON,
) -> SafetyThresholds:
    """Derive thresholds from reference images and a declared safe shift.

    Each reference is compared against itself shifted by ``+safe_shift`` and
    ``-safe_shift``; the thresholds are the conservative envelope across both
    signs and all references (lowest intersection, highest divergences).
    ``safe_shift`` of 0 degenerates to self-distance and yields the identity
    triple (1, 0, 0).
    """
    space = check_space(space)
    safe_shift = int(safe_shift)
    if not 0 <= safe_shift <= 255:
        raise ValueError(f"safe_shift must be in [0, 255], got {safe_shift}")
    images = [check_image(img, f"reference_images[{i}]") for i, img in enumerate(reference_images)]
    if not images:
        raise EmptyReferenceSetError("calibration needs at least one reference image")

    signs = (safe_shift, -safe_shift) if safe_shift else (0,)
    hi_min, kl_max, db_max = math.inf, -math.inf, -math.inf
    for image in images:
        base = to_space(image, space)
        reference = build_histogram(base)
        for signed in signs:
            report = distance_report(
                reference, build_histogram(shift_image(base, signed)), space, epsilon
            )
            hi_min = min(hi_min, report.hi)
            kl_max = max(kl_max, report.kl)
            db_max = max(db_max, report.db)
    return SafetyThresholds(
        hi_min=hi_min,
        kl_max=kl_max,
        db_max=db_max,
        safe_shift=safe_shift,
        space=space,
        epsilon=epsilon,
        calibrated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        n_references=len(images),
    )


def gate_report(
    thresholds: SafetyThresholds,
    report: DistanceReport,
    policy: str = "any",
    frame: int = 0,
) -> GateDecision:
    """Apply the gate rule to already-measured distances.

    An infinite ``db`` (disjoint supports) simply fails the ``db`` check; it
    is a legitimate measurement, not an error.
    """
    policy = check_policy(policy)
    checks = {
        "hi": MetricCheck(report.hi, thresholds.hi_min, report.hi > thresholds.hi_min),
        "kl": MetricCheck(report.kl, thresholds.kl_max, report.kl < thresholds.kl_max),
        "db": MetricCheck(report.db, thresholds.db_max, report.db < thresholds.db_max),
    }
    verdicts = [check.passed for check in checks.values()]
    safe = any(verdicts) if policy == "any" else all(verdicts)
    return GateDecision(safe=safe, per_metric=checks, policy=policy, frame=frame)


def gate(
    thresholds: SafetyThresholds,
    reference_image: np.ndarray,
    query_image: np.ndarray,
    policy: str = "any",
) -> GateDecision:
    """Measure one query frame against the reference and apply the gate rule.

    Both images are moved into the thresholds' color space before
    histogramming, so a gate calibrated in YUV judges in YUV.
    """
    reference_image = check_image(reference_image, "reference_image")
    query_image = check_image(query_image, "query_image")
    p = build_histogram(to_space(reference_image, thresholds.space))
    q = build_histogram(to_space(query_image, thresholds.space))
    report = distance_report(p, q, thresholds.space, thresholds.epsilon)
    return gate_report(thresholds, report, policy)


def gate_stream(
    thresholds: SafetyThresholds,
    reference_image: np.ndarray,
    query_stream: Iterable[np.ndarray],
    policy: str = "any",
) -> Iterator[GateDecision]:
    """Gate a sequence of frames, yielding one decision per frame in order.

    A frame that fails to evaluate (wrong shape, undecodable) yields an
    unsafe decision carrying the error text instead of halting the stream.
    """
    policy = check_policy(policy)
    reference_image = check_image(reference_image, "reference_image")
    reference = build_histogram(to_space(reference_image, thresholds.space))
    for frame, query in enumerate(query_stream):
        try:
            query = check_image(query, f"frame {frame}")
            q = build_histogram(to_space(query, thresholds.space))
            report = distance_report(reference, q, thresholds.space, thresholds.epsilon)
            yield gate_report(thresholds, report, policy, frame=frame)
        except (DriftGateError, ValueError) as exc:
            yield GateDecision(
                safe=False, per_metric={}, policy=policy, frame=frame, error=str(exc)
            )


def first_unsafe_frame(decisions: Iterable[GateDecision]) -> int | None:
    """Index of the first unsafe decision, or None when all are safe."""
    for decision in decisions:
        if not decision.safe:
            return decision.frame
    return None


def save_thresholds(thresholds: SafetyThresholds, path: str | Path) -> None:
    """Persist thresholds as a JSON document."""
    payload = {
        "hi_min": thresholds.hi_min,
        "kl_max": thresholds.kl_max,
        "db_max": thresholds.db_max,
        "safe_shift": thresholds.safe_shift,
        "space": thresholds.space,
        "epsilon": thresholds.epsilon,
        "calibrated_at": thresholds.calibrated_at,
        "n_references": thresholds.n_references,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def load_thresholds(path: str | Path) -> SafetyThresholds:
    """Load thresholds saved by :func:`save_thresholds`."""
    payload = json.loads(Path(path).read_text())
    return SafetyThresholds(
        hi_min=float(payload["hi_min"]),
        kl_max=float(payload["kl_max"]),
        db_max=float(payload["db_max"]),
        safe_shift=int(payload["safe_shift"]),
        space=str(payload["space"]),
        epsilon=float(payload["epsilon"]),
        calibrated_at=str(payload.get("calibrated_at", "")),
        n_references=int(payload.get("n_references", 0)),
    )
