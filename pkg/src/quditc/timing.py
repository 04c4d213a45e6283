"""Gate-duration model keyed by occupied level.

A level label is occupied dimension minus one: 1 for a qubit, 2 for a
qutrit, 3 for a ququart, 4 for a ququint. Durations are in nanoseconds.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

from .gates import GateApp, Kind

LABELS = (1, 2, 3, 4)

_SINGLE = {1: 30.0, 2: 50.0, 3: 50.0, 4: 50.0}
# (a, b): (interaction, swap)
_PAIRS = {
    (1, 1): (500.0, 900.0),
    (1, 2): (500.0, 1200.0),
    (1, 3): (500.0, 1500.0),
    (1, 4): (600.0, 1800.0),
    (2, 2): (675.0, 2950.0),
    (2, 3): (850.0, 5000.0),
    (2, 4): (1025.0, 7050.0),
    (3, 3): (850.0, 5000.0),
    (3, 4): (1025.0, 7050.0),
    (4, 4): (1200.0, 7500.0),
}
# Rows labelled "0, k" are kept for reference only; no level maps to label 0.
_INERT = {
    (0, 1): (150.0, 600.0),
    (0, 2): (500.0, 1200.0),
    (0, 3): (500.0, 1500.0),
    (0, 4): (600.0, 1800.0),
}


class TimingError(ValueError):
    pass


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class TimingTable:
    single: dict[int, float]
    interaction: dict[tuple[int, int], float]
    swap: dict[tuple[int, int], float]
    inert: dict = field(default_factory=dict, compare=False)

    def single_time(self, level: int) -> float:
        try:
            return self.single[level]
        except KeyError:
            raise TimingError(f"no single-qudit time for level {level}") from None

    def interaction_time(self, a: int, b: int) -> float:
        try:
            return self.interaction[_key(a, b)]
        except KeyError:
            raise TimingError(f"no interaction time for levels {a}, {b}") from None

    def swap_time(self, a: int, b: int) -> float:
        try:
            return self.swap[_key(a, b)]
        except KeyError:
            raise TimingError(f"no swap time for levels {a}, {b}") from None

    def check(self) -> None:
        """Positivity, swap >= interaction, and monotonicity in each label."""
        for name, m in (("single", self.single), ("interaction", self.interaction), ("swap", self.swap)):
            for k, v in m.items():
                if v <= 0:
                    raise TimingError(f"{name}{k} = {v} is not positive")
        for k, v in self.interaction.items():
            if k in self.swap and self.swap[k] < v:
                raise TimingError(f"swap{k} shorter than interaction{k}")
        for m in (self.interaction, self.swap):
            for (a, b), v in m.items():
                for step in ((a + 1, b), (a, b + 1)):
                    nxt = m.get(_key(*step))
                    if nxt is not None and nxt < v:
                        raise TimingError(f"durations decrease from {(a, b)} to {step}")
        labels = sorted(self.single)
        for lo, hi in zip(labels, labels[1:]):
            if self.single[hi] < self.single[lo]:
                raise TimingError(f"single durations decrease from level {lo} to {hi}")


def load_default() -> TimingTable:
    t = TimingTable(
        dict(_SINGLE),
        {k: v[0] for k, v in _PAIRS.items()},
        {k: v[1] for k, v in _PAIRS.items()},
        dict(_INERT),
    )
    t.check()
    return t


def load_overrides(path, base: TimingTable | None = None) -> TimingTable:
    """Apply a CSV of ``kind,level_a,level_b,ns`` rows on top of ``base``."""
    base = base or load_default()
    single, inter, swap = dict(base.single), dict(base.interaction), dict(base.swap)
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.DictReader(fh), start=2):
            try:
                kind = row["kind"].strip()
                a = int(row["level_a"])
                ns = float(row["ns"])
                if kind == "single":
                    single[a] = ns
                    continue
                b = int(row["level_b"])
            except (KeyError, TypeError, ValueError) as exc:
                raise TimingError(f"{path}:{lineno}: bad timing row ({exc})") from None
            if kind == "interaction":
                inter[_key(a, b)] = ns
            elif kind == "swap":
                swap[_key(a, b)] = ns
            else:
                raise TimingError(f"{path}:{lineno}: unknown kind {kind!r}")
    t = TimingTable(single, inter, swap, dict(base.inert))
    t.check()
    return t


def level_of(occupied_dim: int) -> int:
    return occupied_dim - 1


def gate_duration(app: GateApp, occupied, t: TimingTable) -> float:
    """Duration of ``app`` given the occupied dimension of each operand.

    ``occupied`` lists operand dimensions in ``app.qudits`` order.
    """
    if app.kind.is_macro and app.kind is not Kind.SWAP:
        raise TimingError(f"{app.kind.value} must be decomposed before timing")
    levels = [level_of(d) for d in occupied]
    if len(levels) == 1:
        return t.single_time(levels[0])
    if len(levels) != 2:
        raise TimingError(f"{app.kind.value} on {len(levels)} qudits has no duration")
    if app.kind is Kind.SWAP:
        return t.swap_time(*levels)
    return t.interaction_time(*levels)


def _fill_1d(known: dict[int, float], x: int) -> float | None:
    below = [k for k in known if k < x]
    above = [k for k in known if k > x]
    if not below or not above:
        return None
    lo, hi = max(below), min(above)
    return known[lo] + (known[hi] - known[lo]) * (x - lo) / (hi - lo)


def _fill_pairs(m: dict, labels) -> tuple[dict, list]:
    out = dict(m)
    missing = []
    for a in labels:
        for b in labels:
            if b < a or (a, b) in out:
                continue
            if a == b:
                diag = {x: m[(x, x)] for x in labels if (x, x) in m}
                v = _fill_1d(diag, a)
            else:
                # Hold the other label fixed; average when both directions bracket.
                row = {x: m[_key(x, b)] for x in labels if _key(x, b) in m}
                col = {y: m[_key(a, y)] for y in labels if _key(a, y) in m}
                guesses = [g for g in (_fill_1d(row, a), _fill_1d(col, b)) if g is not None]
                v = sum(guesses) / len(guesses) if guesses else None
            if v is None:
                missing.append((a, b))
            else:
                out[(a, b)] = v
    return out, missing


def interpolate(partial: TimingTable, labels=LABELS) -> TimingTable:
    """Fill missing entries linearly between the nearest known labels.

    Diagonal entries ``(x, x)`` interpolate along the diagonal; off-diagonal
    entries along whichever coordinate(s) bracket them. Entries with no
    bracketing neighbours are not extrapolated: they raise ``TimingError``
    listing what is missing.
    """
    single = dict(partial.single)
    missing = []
    for x in labels:
        if x not in single:
            v = _fill_1d(partial.single, x)
            if v is None:
                missing.append(("single", x))
            else:
                single[x] = v
    inter, miss_i = _fill_pairs(partial.interaction, labels)
    swap, miss_s = _fill_pairs(partial.swap, labels)
    missing += [("interaction", *k) for k in miss_i] + [("swap", *k) for k in miss_s]
    if missing:
        raise TimingError(f"cannot interpolate, missing anchors for {missing}")
    t = TimingTable(single, inter, swap, dict(partial.inert))
    t.check()
    return t
