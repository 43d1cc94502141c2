"""Torus weight frames: rational specializations of the equivariant weights.

All equivariant identities are checked at several random frames of distinct
rational weights.  A frame is valid for a tuple ``a`` and a degree bound when
none of the denominators met during recursion-coefficient evaluation, pole
evaluation, or residue extraction can vanish; the guard below rejects any
collision up front so downstream code never trips over a spurious pole.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import FrameError
from .mirror import as_exponent_tuple


@dataclass(frozen=True)
class FixedPointFrame:
    """Distinct rational torus weights plus the index of a chosen fixed point."""

    n: int
    alpha: tuple[Fraction, ...]
    i: int = 0

    def __post_init__(self):
        alpha = tuple(Fraction(v) for v in self.alpha)
        if len(alpha) != self.n:
            raise FrameError(f"expected {self.n} weights, got {len(alpha)}")
        if len(set(alpha)) != self.n:
            raise FrameError("weights must be pairwise distinct")
        if not 0 <= self.i < self.n:
            raise FrameError(f"fixed-point index {self.i} outside [0, {self.n})")
        object.__setattr__(self, "alpha", alpha)

    def with_fixed_point(self, i: int) -> FixedPointFrame:
        return FixedPointFrame(self.n, self.alpha, i)

    def fixed_points(self) -> list[FixedPointFrame]:
        return [self.with_fixed_point(i) for i in range(self.n)]

    def to_json(self) -> list[str]:
        return [f"{v.numerator}/{v.denominator}" for v in self.alpha]


def validate_frame(frame: FixedPointFrame, a, d_max: int) -> None:
    """Reject frames with resonances for the configured degree bound.

    Checked families, for all fixed points i != j, degrees d, d' <= d_max:
      * the evaluation points (alpha_j - alpha_i)/d are nonzero and pairwise
        distinct across (j, d), and zero weights are excluded;
      * recursion denominators alpha_i - alpha_k + r (alpha_j - alpha_i)/d
        do not vanish except for the structurally omitted (r, k) = (d, j);
      * series denominators alpha_j - alpha_k + r (alpha_j - alpha_i)/d do
        not vanish at the evaluation points;
      * evaluation points of one fixed point never coincide with pole
        locations (alpha_k - alpha_j)/d' of another;
      * numerator factors a_m alpha_i +- r (alpha_j - alpha_i)/d do not
        vanish, so recursion coefficients are not spuriously zero.
    """
    a = as_exponent_tuple(a)
    alpha = frame.alpha
    n = frame.n
    if any(v == 0 for v in alpha):
        raise FrameError("zero weight in frame")
    for i in range(n):
        points: set[Fraction] = set()
        for j in range(n):
            if j == i:
                continue
            for d in range(1, d_max + 1):
                c = (alpha[j] - alpha[i]) / d
                if c in points:
                    raise FrameError(
                        f"coinciding evaluation points at fixed point {i}"
                    )
                points.add(c)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for d in range(1, d_max + 1):
                c = (alpha[j] - alpha[i]) / d
                for k in range(n):
                    for r in range(1, d_max + 1):
                        if alpha[i] - alpha[k] + r * c == 0 and (r, k) != (d, j):
                            raise FrameError(
                                f"recursion denominator vanishes at (i={i}, j={j},"
                                f" d={d}, r={r}, k={k})"
                            )
                        if alpha[j] - alpha[k] + r * c == 0:
                            raise FrameError(
                                f"series denominator vanishes at the evaluation"
                                f" point (i={i}, j={j}, d={d}, r={r}, k={k})"
                            )
                for k in range(n):
                    if k == j:
                        continue
                    for d2 in range(1, d_max + 1):
                        if c == (alpha[k] - alpha[j]) / d2:
                            raise FrameError(
                                f"evaluation point of ({i},{j},{d}) hits a pole"
                                f" of the series at fixed point {j}"
                            )
                for m, am in enumerate(a.entries):
                    top = abs(am) * d_max
                    for r in range(0, top + 1):
                        if am * alpha[i] + r * c == 0 or am * alpha[i] - r * c == 0:
                            raise FrameError(
                                f"numerator factor vanishes at (i={i}, j={j},"
                                f" d={d}, entry={m}, r={r})"
                            )


def random_frame(
    n: int, a, d_max: int, rng: random.Random, bound: int = 50, max_tries: int = 500
) -> FixedPointFrame:
    """Draw a valid frame of small distinct nonzero integers."""
    a = as_exponent_tuple(a)
    pool = [v for v in range(-bound, bound + 1) if v != 0]
    for _ in range(max_tries):
        alpha = tuple(Fraction(v) for v in rng.sample(pool, n))
        frame = FixedPointFrame(n, alpha)
        try:
            validate_frame(frame, a, d_max)
        except FrameError:
            continue
        return frame
    raise FrameError(
        f"no valid frame found for n={n}, a={a.entries}, d_max={d_max}"
        f" after {max_tries} tries"
    )


def random_frames(
    n: int, a, d_max: int, count: int, seed: int, bound: int = 50
) -> list[FixedPointFrame]:
    """Reproducible list of valid frames for a fixed seed."""
    rng = random.Random(seed)
    return [random_frame(n, a, d_max, rng, bound) for _ in range(count)]
