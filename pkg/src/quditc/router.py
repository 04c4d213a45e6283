"""SWAP insertion by greedy descent on a time-weighted layout score.

The score of a layout is the sum over virtual pairs of remaining interaction
weight times the time for that pair to meet. Ops run in program order; while
the next two-qudit op is blocked, the router applies whichever SWAP on an
edge touching either operand lowers the score the most.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, QuditSpec
from .gates import GateApp, Kind
from .layout import InteractionWeights, check_capacity, compute_weights
from .levels import LevelTracker
from .timing import TimingTable
from .topology import Mapping, Topology, distance_time

STALL_LIMIT = 3  # every window of this many swaps must bring the operands closer


class RoutingError(RuntimeError):
    pass


@dataclass
class RouteState:
    topo: Topology
    mapping: Mapping
    weights: InteractionWeights
    levels: LevelTracker
    t: TimingTable
    frontier: int = 0

    def dist(self, u: int, v: int, su: int | None = None, sv: int | None = None, t=None) -> float:
        su = self.mapping[u] if su is None else su
        sv = self.mapping[v] if sv is None else sv
        dims = (self.levels.occupied(u), self.levels.occupied(v))
        return distance_time(self.topo, su, sv, dims, t or self.t)


def score(state: RouteState, t: TimingTable | None = None) -> float:
    return sum(w * state.dist(u, v, t=t) for (u, v), w in state.weights.pairs().items())


def swap_delta(state: RouteState, a: int, b: int) -> float:
    """Score change from exchanging the contents of sites ``a`` and ``b``."""
    occ = state.mapping.occupant
    moved = {occ[s]: o for s, o in ((a, b), (b, a)) if s in occ}
    delta = 0.0
    for u, new_u in moved.items():
        for v, w in state.weights.adj[u].items():
            if v in moved and v < u:
                continue  # pair already counted from the other side
            new_v = moved.get(v, state.mapping[v])
            delta += w * (state.dist(u, v, new_u, new_v) - state.dist(u, v))
    return delta


def _forced_step(topo: Topology, sa: int, sb: int) -> tuple[int, int]:
    step = min(topo.neighbors(sa), key=lambda s: (topo.hops(s, sb), s))
    return min(sa, step), max(sa, step)


def route(c: Circuit, topo: Topology, t: TimingTable, initial: Mapping) -> Circuit:
    """Routed circuit over device sites; every two-qudit op acts on a grid edge."""
    check_capacity(c, topo)
    if len(initial) != c.n_qudits:
        raise ValueError("initial mapping must place every virtual qudit")
    state = RouteState(topo, initial.copy(), compute_weights(c), LevelTracker.for_circuit(c), t)
    limit = topo.rows * topo.cols * 4
    out: list[GateApp] = []
    swaps = 0
    for idx, op in enumerate(c.ops):
        state.frontier = idx
        qs = op.qudits
        if len(qs) > 2:
            raise RoutingError(f"op {idx}: {op.kind.value} on {len(qs)} qudits must be decomposed first")
        if len(qs) == 2:
            a, b = qs
            best_hops = topo.hops(state.mapping[a], state.mapping[b])
            stall = used = 0
            while best_hops > 1 and topo.hops(state.mapping[a], state.mapping[b]) > 1:
                if used >= limit:
                    raise RoutingError(f"op {idx}: no adjacency after {used} swaps")
                sa, sb = state.mapping[a], state.mapping[b]
                if stall >= STALL_LIMIT - 1:
                    edge = _forced_step(topo, sa, sb)
                else:
                    cands = sorted({(min(s, x), max(s, x)) for s in (sa, sb) for x in topo.neighbors(s)})
                    edge = min(cands, key=lambda e: (swap_delta(state, *e), _hops_after(state, a, b, e), e))
                out.append(GateApp(Kind.SWAP, edge))
                state.mapping.swap_sites(*edge)
                used += 1
                swaps += 1
                h = topo.hops(state.mapping[a], state.mapping[b])
                if h < best_hops:
                    best_hops, stall = h, 0
                else:
                    stall += 1
                if h <= 1:
                    break
        out.append(op.remap(state.mapping.phi))
        state.levels.apply(op)
        state.weights.decrement(qs)
    if state.weights.total():
        raise RoutingError("interaction weights did not drain to zero")
    return _routed_circuit(c, topo, initial, state.mapping, out, swaps)


def _hops_after(state: RouteState, a: int, b: int, edge) -> int:
    x, y = edge
    sa, sb = state.mapping[a], state.mapping[b]
    swap = {x: y, y: x}
    return state.topo.hops(swap.get(sa, sa), swap.get(sb, sb))


def _routed_circuit(c: Circuit, topo: Topology, initial: Mapping, final: Mapping, ops, swaps: int) -> Circuit:
    site_dim = max(c.dims, default=2)
    sites = [QuditSpec(s, site_dim) for s in range(topo.n_sites)]
    meta = {k: v for k, v in c.metadata.items() if k in ("radix", "controls", "ancilla", "cost_padding_1q")}
    meta.update(
        virtual=c.qudits,
        initial_mapping=initial.as_tuple(),
        final_mapping=final.as_tuple(),
        grid=str(topo),
        swap_count=swaps,
    )
    return Circuit(sites, ops, c.name, meta)


def is_routed(c: Circuit) -> bool:
    return "initial_mapping" in c.metadata


def adjacency_violations(c: Circuit, topo: Topology) -> list[int]:
    """Indices of multi-qudit ops whose sites are not grid neighbours."""
    bad = []
    for idx, op in enumerate(c.ops):
        qs = op.qudits
        if len(qs) > 2 or (len(qs) == 2 and not topo.adjacent(*qs)):
            bad.append(idx)
    return bad
