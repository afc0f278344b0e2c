"""f-vector calculus for Hanner polytopes built from threshold creation sequences."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Step, ThresholdSeq


@dataclass(frozen=True)
class FVector:
    """Counts f_0 .. f_d of nonempty faces by dimension; f_d = 1 is the polytope."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if not counts or counts[-1] != 1:
            raise ValueError("last entry must be 1 (the polytope itself)")
        if any(c <= 0 for c in counts):
            raise ValueError("face counts must be positive")

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    @property
    def s(self) -> int:
        return sum(self.counts)

    def euler_ok(self) -> bool:
        d = self.dim
        return sum((-1) ** k * f for k, f in enumerate(self.counts[:-1])) == 1 - (-1) ** d


def fvec_segment() -> FVector:
    return FVector((2, 1))


def fvec_product(a: FVector, b: FVector) -> FVector:
    out = [0] * (a.dim + b.dim + 1)
    for i, x in enumerate(a.counts):
        for j, y in enumerate(b.counts):
            out[i + j] += x * y
    return FVector(tuple(out))


def fvec_polar(a: FVector) -> FVector:
    return FVector(tuple(reversed(a.counts[:-1])) + (1,))


def hanner_from_threshold(seq: ThresholdSeq) -> FVector:
    """Isolated node: product with a segment. Dominating node: the same under polarity."""
    seg = fvec_segment()
    cur = seg
    for step in seq.steps:
        if step is Step.ISOLATED:
            cur = fvec_product(cur, seg)
        else:
            cur = fvec_polar(fvec_product(fvec_polar(cur), seg))
    return cur
