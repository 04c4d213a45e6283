"""Greedy initial placement driven by interaction weights."""
from __future__ import annotations

from collections import defaultdict
from itertools import combinations

from .circuit import Circuit
from .timing import TimingTable
from .topology import CapacityError, Mapping, Topology, center_site, distance_time


class InteractionWeights:
    """Symmetric pair counts, kept as an adjacency map for cheap updates."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[dict[int, int]] = [defaultdict(int) for _ in range(n)]

    def __getitem__(self, pair) -> int:
        u, v = pair
        return self.adj[u].get(v, 0)

    def add(self, u: int, v: int, amount: int = 1) -> None:
        new = self.adj[u].get(v, 0) + amount
        if new < 0:
            raise ValueError(f"weight of ({u}, {v}) would go negative")
        if new:
            self.adj[u][v] = self.adj[v][u] = new
        else:
            self.adj[u].pop(v, None)
            self.adj[v].pop(u, None)

    def decrement(self, qudits) -> None:
        for u, v in combinations(qudits, 2):
            self.add(u, v, -1)

    def strength(self, u: int) -> int:
        return sum(self.adj[u].values())

    def pairs(self) -> dict[tuple[int, int], int]:
        return {(u, v): w for u in range(self.n) for v, w in self.adj[u].items() if u < v}

    def total(self) -> int:
        return sum(self.pairs().values())

    def copy(self) -> "InteractionWeights":
        out = InteractionWeights(self.n)
        for u in range(self.n):
            out.adj[u].update(self.adj[u])
        return out


def compute_weights(c: Circuit) -> InteractionWeights:
    w = InteractionWeights(c.n_qudits)
    for op in c.ops:
        for u, v in combinations(op.qudits, 2):
            w.add(u, v)
    return w


def check_capacity(c: Circuit, topo: Topology) -> None:
    if c.n_qudits > topo.n_sites:
        raise CapacityError(f"{c.n_qudits} qudits do not fit on a {topo} grid ({topo.n_sites} sites)")
    if max(c.dims, default=2) > topo.site_max_dim:
        raise CapacityError(f"qudit dim {max(c.dims)} exceeds the device limit {topo.site_max_dim}")


def place(c: Circuit, topo: Topology, t: TimingTable, weights: InteractionWeights | None = None) -> Mapping:
    """Grow the layout outward from the center, one best-connected qudit at a time.

    Distances use each qudit's declared dimension, since occupied levels are
    not known before execution.
    """
    check_capacity(c, topo)
    w = weights or compute_weights(c)
    dims = c.dims
    phi = Mapping(topo.n_sites)
    n = c.n_qudits
    if n == 0:
        return phi
    seed = min(range(n), key=lambda u: (-w.strength(u), u))
    phi.assign(seed, center_site(topo))
    gain = [0] * n  # weight from each unplaced qudit to the placed set
    frontier = set()

    def add_placed(v: int) -> None:
        for u, x in w.adj[v].items():
            gain[u] += x
        frontier.discard(phi[v])
        for s in topo.neighbors(phi[v]):
            if s not in phi.occupant:
                frontier.add(s)

    add_placed(seed)
    unplaced = set(range(n)) - {seed}
    while unplaced:
        u = min(unplaced, key=lambda q: (-gain[q], q))
        sites = sorted(frontier) or _nearest_empty(topo, phi)
        placed_nbrs = [(phi[v], x) for v, x in w.adj[u].items() if v in phi]

        def m(s: int) -> float:
            return sum(x * distance_time(topo, s, ps, (dims[u], dims[phi.occupant[ps]]), t) for ps, x in placed_nbrs)

        best = min(sites, key=lambda s: (m(s), s))
        phi.assign(u, best)
        unplaced.discard(u)
        add_placed(u)
    return phi


def _nearest_empty(topo: Topology, phi: Mapping) -> list[int]:
    empty = [s for s in range(topo.n_sites) if s not in phi.occupant]
    dist = {s: min(topo.hops(s, p) for p in phi.occupant) for s in empty}
    best = min(dist.values())
    return [s for s in empty if dist[s] == best]
