"""Estimator-style wrappers over the shift, preprocess, and gate kernels.

These follow the scikit-learn contract — constructor stores parameters
verbatim, ``fit`` validates and learns state on trailing-underscore
attributes, transformers are usable in pipelines — so the gate can sit at
the end of an ordinary preprocessing chain.
"""

from __future__ import annotations

import dataclasses

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .distances import DEFAULT_EPSILON
from .gate import GateDecision, calibrate, check_policy, gate
from .image import PreprocessSpec, preprocess, shift_image
from .validation import check_image_batch


def _as_batch(X) -> list[np.ndarray]:
    return check_image_batch(X, "X")


class IntensityShift(TransformerMixin, BaseEstimator):
    """Apply a saturating intensity shift to every frame.

    Stateless: ``fit`` only records the input count.  ``transform`` accepts
    a single ``(H, W, 3)`` frame or any sequence/stack of them and returns
    the same arrangement shifted.
    """

    def __init__(self, shift: int = 0):
        self.shift = shift

    def fit(self, X, y=None):
        self.n_frames_in_ = len(_as_batch(X))
        return self

    def transform(self, X):
        single = isinstance(X, np.ndarray) and X.ndim == 3
        shifted = [shift_image(img, self.shift) for img in _as_batch(X)]
        return shifted[0] if single else np.stack(shifted)


class FramePreprocessor(TransformerMixin, BaseEstimator):
    """Crop, resize, and optionally recolor frames for a downstream model."""

    def __init__(
        self,
        crop_top: int = 60,
        crop_bottom: int = 25,
        target_width: int = 200,
        target_height: int = 66,
        output_space: str = "rgb",
    ):
        self.crop_top = crop_top
        self.crop_bottom = crop_bottom
        self.target_width = target_width
        self.target_height = target_height
        self.output_space = output_space

    def _spec(self) -> PreprocessSpec:
        return PreprocessSpec(
            crop_top_rows=self.crop_top,
            crop_bottom_rows=self.crop_bottom,
            target_width=self.target_width,
            target_height=self.target_height,
            output_space=self.output_space,
        )

    def fit(self, X, y=None):
        batch = _as_batch(X)
        self._spec().validate(batch[0].shape[0])
        self.n_frames_in_ = len(batch)
        return self

    def transform(self, X):
        single = isinstance(X, np.ndarray) and X.ndim == 3
        spec = self._spec()
        processed = [preprocess(img, spec) for img in _as_batch(X)]
        return processed[0] if single else np.stack(processed)


class DistributionShiftGate(BaseEstimator):
    """Gate frames by their histogram distance to training references.

    ``fit`` calibrates thresholds from reference frames and a declared safe
    shift; ``predict`` returns one safety boolean per query frame, and
    ``decide`` the full per-metric detail.  Explicit ``hi_min``/``kl_max``/
    ``db_max`` values override the corresponding calibrated ones, for
    operating the gate at published thresholds.

    The reference frame used at query time is the first fitted frame by
    default; ``reference="random"`` samples one per ``predict`` call from
    the fitted set using ``random_state``.
    """

    def __init__(
        self,
        safe_shift: int = 40,
        space: str = "rgb",
        epsilon: float = DEFAULT_EPSILON,
        policy: str = "any",
        reference: str = "first",
        random_state: int | None = None,
        hi_min: float | None = None,
        kl_max: float | None = None,
        db_max: float | None = None,
    ):
        self.safe_shift = safe_shift
        self.space = space
        self.epsilon = epsilon
        self.policy = policy
        self.reference = reference
        self.random_state = random_state
        self.hi_min = hi_min
        self.kl_max = kl_max
        self.db_max = db_max

    def fit(self, X, y=None):
        if self.reference not in ("first", "random"):
            raise ValueError(f"reference must be 'first' or 'random', got {self.reference!r}")
        check_policy(self.policy)
        references = _as_batch(X)
        thresholds = calibrate(references, self.safe_shift, self.space, self.epsilon)
        overrides = {
            name: value
            for name, value in (
                ("hi_min", self.hi_min),
                ("kl_max", self.kl_max),
                ("db_max", self.db_max),
            )
            if value is not None
        }
        if overrides:
            thresholds = dataclasses.replace(thresholds, **overrides)
        self.thresholds_ = thresholds
        self.references_ = references
        self.n_references_ = len(references)
        return self

    def _reference_image(self, rng: np.random.Generator) -> np.ndarray:
        if self.reference == "random":
            return self.references_[rng.integers(0, len(self.references_))]
        return self.references_[0]

    def decide(self, X) -> list[GateDecision]:
        """Full gate decisions, one per query frame."""
        if not hasattr(self, "thresholds_"):
            raise NotFittedError("this DistributionShiftGate is not fitted yet; call fit first")
        rng = np.random.default_rng(self.random_state)
        decisions = []
        for frame, query in enumerate(_as_batch(X)):
            decision = gate(self.thresholds_, self._reference_image(rng), query, self.policy)
            decision.frame = frame
            decisions.append(decision)
        return decisions

    def predict(self, X) -> np.ndarray:
        """Safety booleans, one per query frame."""
        return np.array([decision.safe for decision in self.decide(X)], dtype=bool)
