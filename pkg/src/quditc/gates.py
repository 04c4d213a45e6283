"""Gate kinds and their action on computational basis states.

Every gate in the native set is a classical permutation of basis
elements, optionally conditioned on control qudits holding given values:

    x+k / cx+k     add k modulo the target dimension
    flip / cflip   exchange basis indices i and j on the target

Macros (``ccx+k``, ``swap``, ``cnx``) have permutation semantics too but must
be decomposed before routing. The three qubit phase gates ``h``, ``t`` and
``tdg`` exist only because a qubit Toffoli cannot be built from classical
one- and two-bit gates; they are not permutations.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Kind(Enum):
    SHIFT = "x+k"
    FLIP = "flip"
    CSHIFT = "cx+k"
    CFLIP = "cflip"
    MCSHIFT = "ccx+k"
    SWAP = "swap"
    CNX = "cnx"
    H = "h"
    T = "t"
    TDG = "tdg"

    @classmethod
    def parse(cls, name: str) -> "Kind":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown gate kind {name!r}") from None

    @property
    def is_macro(self) -> bool:
        return self in _MACROS

    @property
    def is_classical(self) -> bool:
        return self not in _PHASE

    @property
    def is_shift(self) -> bool:
        return self in (Kind.SHIFT, Kind.CSHIFT, Kind.MCSHIFT)

    @property
    def is_flip(self) -> bool:
        return self in (Kind.FLIP, Kind.CFLIP, Kind.CNX)


_MACROS = frozenset({Kind.MCSHIFT, Kind.SWAP, Kind.CNX})
_PHASE = frozenset({Kind.H, Kind.T, Kind.TDG})
NATIVE = frozenset({Kind.SHIFT, Kind.FLIP, Kind.CSHIFT, Kind.CFLIP, Kind.H, Kind.T, Kind.TDG})

# (min controls, max controls, number of targets)
_ARITY = {
    Kind.SHIFT: (0, 0, 1),
    Kind.FLIP: (0, 0, 1),
    Kind.CSHIFT: (1, 1, 1),
    Kind.CFLIP: (1, 1, 1),
    Kind.MCSHIFT: (2, None, 1),
    Kind.SWAP: (0, 0, 2),
    Kind.CNX: (1, None, 1),
    Kind.H: (0, 0, 1),
    Kind.T: (0, 0, 1),
    Kind.TDG: (0, 0, 1),
}


@dataclass(frozen=True)
class GateApp:
    """One gate application.

    ``targets`` holds the acted-on qudits (two for ``swap``), ``controls``
    holds ``(qudit, value)`` pairs. ``k`` is the shift amount for the shift
    family and ``ij`` the exchanged pair for the flip family (``cnx`` always
    flips 0 and 1).
    """

    kind: Kind
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()
    k: int = 0
    ij: tuple[int, int] = (0, 1)

    @property
    def qudits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.controls) + self.targets

    @property
    def target(self) -> int:
        return self.targets[0]

    def check_arity(self) -> None:
        lo, hi, nt = _ARITY[self.kind]
        nc = len(self.controls)
        if len(self.targets) != nt:
            raise ValueError(f"{self.kind.value} takes {nt} target(s), got {len(self.targets)}")
        if nc < lo or (hi is not None and nc > hi):
            raise ValueError(f"{self.kind.value} cannot take {nc} control(s)")
        if len(set(self.qudits)) != len(self.qudits):
            raise ValueError(f"{self.kind.value} uses a qudit twice: {self.qudits}")
        if self.kind.is_flip and self.ij[0] == self.ij[1]:
            raise ValueError("flip needs two distinct levels")

    def permutation(self, dim: int) -> tuple[int, ...]:
        """Action on the target's basis indices when all controls match."""
        if self.kind.is_shift:
            return tuple((v + self.k) % dim for v in range(dim))
        if self.kind.is_flip:
            i, j = self.ij
            perm = list(range(dim))
            perm[i], perm[j] = j, i
            return tuple(perm)
        raise ValueError(f"{self.kind.value} has no single-target permutation")

    def inverse(self) -> "GateApp":
        if self.kind.is_shift:
            return GateApp(self.kind, self.targets, self.controls, -self.k, self.ij)
        if self.kind is Kind.T:
            return GateApp(Kind.TDG, self.targets)
        if self.kind is Kind.TDG:
            return GateApp(Kind.T, self.targets)
        return self

    def remap(self, phi) -> "GateApp":
        """Same gate with every qudit id sent through ``phi``."""
        return GateApp(
            self.kind,
            tuple(phi[q] for q in self.targets),
            tuple((phi[q], v) for q, v in self.controls),
            self.k,
            self.ij,
        )

    def __str__(self) -> str:
        from .qdformat import format_gate

        return format_gate(self)


def controls_match(app: GateApp, state) -> bool:
    return all(state[q] == v for q, v in app.controls)


def apply_classical(app: GateApp, state: list[int], dims) -> list[int]:
    """Apply ``app`` in place to a basis-index vector and return it.

    ``dims[q]`` is the dimension of qudit ``q``. Raises ``ValueError`` for
    gates that are not permutations or for out-of-range digits.
    """
    for q in app.qudits:
        if not 0 <= state[q] < dims[q]:
            raise ValueError(f"digit {state[q]} out of range for qudit {q} (dim {dims[q]})")
    if not app.kind.is_classical:
        raise ValueError(f"{app.kind.value} is not a classical permutation")
    if not controls_match(app, state):
        return state
    if app.kind is Kind.SWAP:
        a, b = app.targets
        if state[a] >= dims[b] or state[b] >= dims[a]:
            raise ValueError(f"swap of qudits {a},{b} overflows a dimension")
        state[a], state[b] = state[b], state[a]
        return state
    t = app.target
    if app.kind.is_shift:
        state[t] = (state[t] + app.k) % dims[t]
    else:
        i, j = app.ij
        if state[t] == i:
            state[t] = j
        elif state[t] == j:
            state[t] = i
    return state
