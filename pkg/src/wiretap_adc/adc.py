"""Scalar finite-resolution quantizers and their output alphabets.

An ADC is a list of strictly increasing thresholds (q_1, ..., q_{k-1}) with
implicit q_0 = -inf and q_k = +inf, plus k distinct output labels.  Cells are
half-open [q_{l-1}, q_l), so a sample exactly on a threshold lands in the
upper cell.  Labels are opaque for rate computations; only cell membership
matters.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .util import require_finite

# Joint transition matrices scale as k_R * k_I; 4096 per component keeps them
# desk-sized.
MAX_LEVELS = 4096


@dataclass(frozen=True)
class AdcSpec:
    """One scalar quantizer: thresholds plus per-cell output labels."""

    thresholds: tuple
    outputs: tuple

    def __post_init__(self):
        thresholds = tuple(float(t) for t in self.thresholds)
        outputs = tuple(float(y) for y in self.outputs)
        object.__setattr__(self, "thresholds", thresholds)
        object.__setattr__(self, "outputs", outputs)
        if len(outputs) != len(thresholds) + 1:
            raise ValidationError(
                f"need one output per cell: {len(thresholds)} thresholds require "
                f"{len(thresholds) + 1} outputs, got {len(outputs)}"
            )
        if len(outputs) < 2:
            raise ValidationError("a quantizer needs at least 2 levels")
        if len(outputs) > MAX_LEVELS:
            raise ValidationError(f"at most {MAX_LEVELS} levels per component supported")
        for t in thresholds:
            if not math.isfinite(t):
                raise ValidationError(f"thresholds must be finite, got {t!r}")
        if any(lo >= hi for lo, hi in zip(thresholds, thresholds[1:])):
            raise ValidationError(f"thresholds must be strictly increasing: {thresholds}")
        if len(set(outputs)) != len(outputs):
            raise ValidationError(f"outputs must be pairwise distinct: {outputs}")

    @property
    def levels(self):
        return len(self.outputs)

    def cell_edges(self):
        """(lower, upper) edge arrays including the infinite end cells."""
        t = np.asarray(self.thresholds, dtype=float)
        lo = np.concatenate(([-np.inf], t))
        hi = np.concatenate((t, [np.inf]))
        return lo, hi

    def cell_of(self, x):
        """Index of the half-open cell [q_{l-1}, q_l) containing x."""
        x = require_finite("x", x)
        # side="right" puts x == q_l into the upper cell.
        return int(np.searchsorted(self.thresholds, x, side="right"))

    def to_json(self):
        return {"thresholds": list(self.thresholds), "outputs": list(self.outputs)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "thresholds" not in obj or "outputs" not in obj:
            raise ValidationError(f"ADC spec needs thresholds/outputs keys, got {obj!r}")
        return cls(tuple(obj["thresholds"]), tuple(obj["outputs"]))


@dataclass(frozen=True)
class ComplexAdcPair:
    """Independent quantizers for the real and imaginary signal components."""

    real_part: AdcSpec
    imag_part: AdcSpec

    @property
    def joint_levels(self):
        return self.real_part.levels * self.imag_part.levels

    def to_json(self):
        return {"real": self.real_part.to_json(), "imag": self.imag_part.to_json()}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, dict) and "thresholds" in obj:
            # convenience: a bare scalar spec is applied to both components
            spec = AdcSpec.from_json(obj)
            return cls(spec, spec)
        if not isinstance(obj, dict) or "real" not in obj or "imag" not in obj:
            raise ValidationError(f"ADC pair needs real/imag keys, got {obj!r}")
        return cls(AdcSpec.from_json(obj["real"]), AdcSpec.from_json(obj["imag"]))


def one_bit():
    """The 2-level sign quantizer: threshold 0, outputs (-1, 1)."""
    return AdcSpec((0.0,), (-1.0, 1.0))


def one_bit_pair():
    return ComplexAdcPair(one_bit(), one_bit())


def quantize(spec, x):
    """Output label for sample x; boundaries belong to the upper cell."""
    return spec.outputs[spec.cell_of(x)]


def shift_thresholds(spec, delta):
    """Decrease every threshold by delta, keeping the labels.

    quantize(shift_thresholds(spec, d), x - d) == quantize(spec, x) for all x.
    """
    delta = require_finite("delta", delta)
    return AdcSpec(tuple(t - delta for t in spec.thresholds), spec.outputs)


def is_symmetric_one_bit(spec):
    return spec.levels == 2 and spec.thresholds == (0.0,)
