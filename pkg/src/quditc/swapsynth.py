"""SWAP between qudits of arbitrary, possibly different, dimensions.

For every pair of levels {i, j} the exchange |i,j> <-> |j,i> is three
controlled i<->j flips, alternating target; all pair exchanges are disjoint
transpositions of the joint basis, so their product is the full SWAP. A
mixed pair uses the construction of the larger dimension on both sides.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .circuit import MAX_DIM
from .gates import GateApp, Kind


@dataclass(frozen=True)
class SwapPlan:
    dim_a: int
    dim_b: int
    gates: tuple[GateApp, ...]

    @property
    def effective_dim(self) -> int:
        return max(self.dim_a, self.dim_b)


def swap_gate_count(dim_a: int, dim_b: int) -> int:
    return 3 * comb(max(dim_a, dim_b), 2)


def synthesize_swap(dim_a: int, dim_b: int, qudits: tuple[int, int] = (0, 1)) -> SwapPlan:
    for d in (dim_a, dim_b):
        if not 2 <= d <= MAX_DIM:
            raise ValueError(f"swap dimension {d} outside 2..{MAX_DIM}")
    a, b = qudits
    gates = []
    # control value is the larger element of each pair
    for i, j in combinations(range(max(dim_a, dim_b)), 2):
        gates += [
            GateApp(Kind.CFLIP, (a,), ((b, j),), ij=(i, j)),
            GateApp(Kind.CFLIP, (b,), ((a, j),), ij=(i, j)),
            GateApp(Kind.CFLIP, (a,), ((b, j),), ij=(i, j)),
        ]
    return SwapPlan(dim_a, dim_b, tuple(gates))
