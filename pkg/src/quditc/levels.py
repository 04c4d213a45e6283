"""Occupied-level tracking over all-binary inputs.

Each qudit's current value is held as a reduced decision diagram over the
binary input variables, so the set of reachable values is exact: a value is
reachable iff some root-to-terminal path ends in it. Correlations between
qudits survive, which is what lets uncomputation bring a qudit back down to
occupied dimension 2.

A qudit touched by a non-permutation gate (or controlled by such a qudit)
loses its diagram and reports its declared dimension from then on.
"""
from __future__ import annotations

from .gates import GateApp, Kind


class _Diagram:
    """Hash-consed multi-terminal decision diagram over binary variables.

    Terminal ``v`` is encoded as ``~v`` (negative ids); inner nodes are
    indices into ``var``/``lo``/``hi``.
    """

    def __init__(self):
        self.var: list[int] = []
        self.lo: list[int] = []
        self.hi: list[int] = []
        self._unique: dict[tuple[int, int, int], int] = {}
        self._max: dict[int, int] = {}
        self._memo: dict = {}

    def node(self, var: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (var, lo, hi)
        n = self._unique.get(key)
        if n is None:
            n = len(self.var)
            self.var.append(var)
            self.lo.append(lo)
            self.hi.append(hi)
            self._unique[key] = n
        return n

    def variable(self, var: int) -> int:
        return self.node(var, ~0, ~1)

    def maxval(self, n: int) -> int:
        if n < 0:
            return ~n
        m = self._max.get(n)
        if m is None:
            m = max(self.maxval(self.lo[n]), self.maxval(self.hi[n]))
            self._max[n] = m
        return m

    def apply(self, perm: tuple[int, ...], cvals: tuple[int, ...], t: int, cs: tuple[int, ...]) -> int:
        keep_v, keep_c = [], []
        for v, c in zip(cvals, cs):
            if c < 0:
                if ~c != v:
                    return t
            else:
                keep_v.append(v)
                keep_c.append(c)
        if not keep_c:
            return self._map(perm, t)
        cvals, cs = tuple(keep_v), tuple(keep_c)
        key = (perm, cvals, t, cs)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        top = min(self.var[n] for n in (t, *cs) if n >= 0)
        lo = self.apply(perm, cvals, self._cof(t, top, 0), tuple(self._cof(c, top, 0) for c in cs))
        hi = self.apply(perm, cvals, self._cof(t, top, 1), tuple(self._cof(c, top, 1) for c in cs))
        out = self.node(top, lo, hi)
        self._memo[key] = out
        return out

    def _cof(self, n: int, var: int, bit: int) -> int:
        if n < 0 or self.var[n] != var:
            return n
        return self.hi[n] if bit else self.lo[n]

    def _map(self, perm, t: int) -> int:
        if t < 0:
            return ~perm[~t]
        key = (perm, t)
        hit = self._memo.get(key)
        if hit is None:
            hit = self.node(self.var[t], self._map(perm, self.lo[t]), self._map(perm, self.hi[t]))
            self._memo[key] = hit
        return hit


class LevelTracker:
    """Forward data flow of occupied dimensions through a circuit."""

    def __init__(self, dims, seeds):
        self.dims = list(dims)
        self.dd = _Diagram()
        self.state: list[int | None] = []
        for s in seeds:
            self.state.append(~0 if s is None else self.dd.variable(s))

    @classmethod
    def for_circuit(cls, c) -> "LevelTracker":
        """Seed every qudit as a free binary input.

        Routed circuits (registry = device sites) seed occupied sites with
        their virtual qudit's input and leave empty sites at 0.
        """
        mapping = c.metadata.get("initial_mapping")
        if mapping is None:
            return cls(c.dims, range(c.n_qudits))
        seeds: list[int | None] = [None] * c.n_qudits
        for v, site in enumerate(mapping):
            seeds[site] = v
        return cls(c.dims, seeds)

    def occupied(self, q: int) -> int:
        n = self.state[q]
        if n is None:
            return self.dims[q]
        return max(2, self.dd.maxval(n) + 1)

    def apply(self, op: GateApp) -> None:
        if op.kind is Kind.SWAP:
            a, b = op.targets
            self.state[a], self.state[b] = self.state[b], self.state[a]
            return
        t = op.target
        if not op.kind.is_classical or self.state[t] is None:
            self.state[t] = None
            return
        cs = tuple(self.state[q] for q, _ in op.controls)
        if any(c is None for c in cs):
            self.state[t] = None
            return
        perm = op.permutation(self.dims[t])
        cvals = tuple(v for _, v in op.controls)
        self.state[t] = self.dd.apply(perm, cvals, self.state[t], cs)
