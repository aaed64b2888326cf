"""Synthetic point sets: Gaussian mixtures with optional uniform noise and heavy tails."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .metric import Dataset, ValidationError


@dataclass(frozen=True)
class Component:
    weight: float
    mean: tuple
    std: float


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for :func:`generate`.

    Component weights plus ``noise_fraction`` must sum to 1. ``tail`` is an
    optional ``(shape, scale)`` pair: each mixture point's offset from its
    mean is stretched by ``1 + scale * L`` with ``L`` Lomax(shape) distributed,
    producing Pareto-tailed radial outliers.
    """

    n: int
    d: int
    components: tuple
    seed: int
    noise_fraction: float = 0.0
    noise_box: tuple = ((0.0, 1.0),)
    tail: Optional[tuple] = None

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Component) else Component(float(c[0]), tuple(c[1]), float(c[2]))
                      for c in self.components)
        object.__setattr__(self, "components", comps)
        box = tuple(tuple(map(float, b)) for b in self.noise_box)
        if len(box) == 1 and self.d > 1:
            box = box * self.d
        object.__setattr__(self, "noise_box", box)
        self.validate()

    def validate(self):
        if self.n < 1 or self.d < 1:
            raise ValidationError("n and d must be positive")
        if not 0 <= self.noise_fraction <= 1:
            raise ValidationError("noise_fraction must lie in [0, 1]")
        if not self.components and self.noise_fraction < 1:
            raise ValidationError("need at least one component")
        for c in self.components:
            if c.weight <= 0 or c.std < 0 or len(c.mean) != self.d:
                raise ValidationError(f"invalid component {c}")
        total = sum(c.weight for c in self.components) + self.noise_fraction
        if abs(total - 1) > 1e-9:
            raise ValidationError(f"component weights and noise_fraction sum to {total}, not 1")
        if len(self.noise_box) != self.d or any(lo > hi for lo, hi in self.noise_box):
            raise ValidationError("noise_box needs one (low, high) pair per dimension")
        if self.tail is not None:
            shape, scale = self.tail
            if shape <= 0 or scale < 0:
                raise ValidationError("tail needs shape > 0 and scale >= 0")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "components": [[c.weight, list(c.mean), c.std] for c in self.components],
            "noise_fraction": self.noise_fraction,
            "noise_box": [list(b) for b in self.noise_box],
            "tail": None if self.tail is None else list(self.tail),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SynthSpec":
        try:
            return cls(
                n=int(doc["n"]),
                d=int(doc["d"]),
                seed=int(doc["seed"]),
                components=tuple(tuple(c) for c in doc.get("components", ())),
                noise_fraction=float(doc.get("noise_fraction", 0.0)),
                noise_box=tuple(tuple(b) for b in doc.get("noise_box", [[0.0, 1.0]])),
                tail=None if doc.get("tail") is None else tuple(doc["tail"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed synth spec: {exc}") from exc


def _draw_labels(rng, spec):
    probs = np.array([c.weight for c in spec.components] + [spec.noise_fraction])
    return rng.choice(len(probs), size=spec.n, p=probs / probs.sum())


def generate(spec: SynthSpec) -> Dataset:
    """Sample the point set described by ``spec``; deterministic per ``spec.seed``."""
    rng = np.random.default_rng(spec.seed)
    labels = _draw_labels(rng, spec)
    X = np.empty((spec.n, spec.d))
    for j, comp in enumerate(spec.components):
        rows = np.flatnonzero(labels == j)
        offset = rng.normal(0.0, 1.0, size=(len(rows), spec.d)) * comp.std
        if spec.tail is not None:
            shape, scale = spec.tail
            offset *= 1.0 + scale * rng.pareto(shape, size=(len(rows), 1))
        X[rows] = np.asarray(comp.mean) + offset
    rows = np.flatnonzero(labels == len(spec.components))
    lo = np.array([b[0] for b in spec.noise_box])
    hi = np.array([b[1] for b in spec.noise_box])
    X[rows] = rng.uniform(lo, hi, size=(len(rows), spec.d))
    return Dataset.from_points(X)


def component_labels(spec: SynthSpec) -> np.ndarray:
    """The component index of each generated point (noise is the last label)."""
    return _draw_labels(np.random.default_rng(spec.seed), spec)


def heavy_tailed_mixture(n: int = 100_000, seed: int = 0) -> SynthSpec:
    """Unbalanced 2-D mixture with Pareto tails, background noise and a far, rare cluster."""
    return SynthSpec(
        n=n,
        d=2,
        seed=seed,
        components=(
            (0.55, (0.0, 0.0), 1.0),
            (0.25, (10.0, 0.0), 0.5),
            (0.12, (0.0, 12.0), 2.0),
            (0.049, (-15.0, -8.0), 0.3),
            (0.001, (80.0, 80.0), 0.5),
        ),
        noise_fraction=0.03,
        noise_box=((-30.0, 30.0), (-30.0, 30.0)),
        tail=(2.5, 0.5),
    )


def outlier_mixture(n: int = 20_000, seed: int = 0) -> SynthSpec:
    """Balanced blobs plus one distant, widely spread cluster holding 0.1% of the mass."""
    return SynthSpec(
        n=n,
        d=2,
        seed=seed,
        components=(
            (0.333, (0.0, 0.0), 1.0),
            (0.333, (8.0, 0.0), 1.0),
            (0.333, (4.0, 7.0), 1.0),
            (0.001, (200.0, 200.0), 20.0),
        ),
    )
