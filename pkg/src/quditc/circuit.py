"""Mixed-radix circuit IR: qudit registry, flat op list, dependency DAG."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .gates import GateApp, Kind

ROLES = ("control", "target", "ancilla", "plain")
MAX_DIM = 7


class CircuitError(ValueError):
    """Malformed circuit; the message names the offending op index."""


@dataclass(frozen=True)
class QuditSpec:
    id: int
    dim: int
    role: str = "plain"

    def __post_init__(self):
        if not 2 <= self.dim <= MAX_DIM:
            raise CircuitError(f"qudit {self.id}: dim {self.dim} outside 2..{MAX_DIM}")
        if self.role not in ROLES:
            raise CircuitError(f"qudit {self.id}: unknown role {self.role!r}")


@dataclass(frozen=True)
class Circuit:
    qudits: tuple[QuditSpec, ...]
    ops: tuple[GateApp, ...] = ()
    name: str = ""
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "qudits", tuple(self.qudits))
        object.__setattr__(self, "ops", tuple(self.ops))
        for pos, q in enumerate(self.qudits):
            if q.id != pos:
                raise CircuitError(f"qudit ids must be dense 0..N-1, found {q.id} at position {pos}")
        dims = self.dims
        for idx, op in enumerate(self.ops):
            _validate_op(idx, op, dims)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(q.dim for q in self.qudits)

    @property
    def n_qudits(self) -> int:
        return len(self.qudits)

    def with_ops(self, ops, **meta) -> "Circuit":
        return replace(self, ops=tuple(ops), metadata={**self.metadata, **meta})

    def count(self, *kinds: Kind) -> int:
        return sum(op.kind in kinds for op in self.ops)

    def two_qudit_count(self) -> int:
        return sum(len(op.qudits) == 2 for op in self.ops)


def _validate_op(idx: int, op: GateApp, dims) -> None:
    try:
        op.check_arity()
    except ValueError as exc:
        raise CircuitError(f"op {idx}: {exc}") from None
    for q in op.qudits:
        if not 0 <= q < len(dims):
            raise CircuitError(f"op {idx}: qudit {q} is not in the registry")
    for q, v in op.controls:
        if not 0 <= v < dims[q]:
            raise CircuitError(f"op {idx}: control value {v} out of range for qudit {q} (dim {dims[q]})")
    if op.kind.is_flip:
        t = op.target
        if not all(0 <= x < dims[t] for x in op.ij):
            raise CircuitError(f"op {idx}: flip levels {op.ij} out of range for qudit {t} (dim {dims[t]})")
    if not op.kind.is_classical and dims[op.target] != 2:
        raise CircuitError(f"op {idx}: {op.kind.value} is a qubit-only gate")


@dataclass(frozen=True)
class DepGraph:
    """Dependency DAG: node i is ``ops[i]``; arcs join consecutive users of a qudit."""

    durations: tuple[float, ...]
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.durations)

    def preds(self) -> list[list[int]]:
        out = [[] for _ in self.durations]
        for u, v in self.edges:
            out[v].append(u)
        return out

    def longest_path(self) -> float:
        """Maximum over paths of the summed node weights."""
        finish = [0.0] * len(self.durations)
        for v, ps in enumerate(self.preds()):
            finish[v] = self.durations[v] + max((finish[u] for u in ps), default=0.0)
        return max(finish, default=0.0)


def dependency_edges(c: Circuit) -> list[tuple[int, int]]:
    last: dict[int, int] = {}
    edges = set()
    for idx, op in enumerate(c.ops):
        for q in op.qudits:
            if q in last:
                edges.add((last[q], idx))
            last[q] = idx
    return sorted(edges)


def build_dep_graph(c: Circuit, t=None, levels=None) -> DepGraph:
    """DAG of ``c`` with per-node durations.

    With no timing table every node weighs 1. Otherwise node durations come
    from ``t`` at the operands' occupied levels; ``levels`` may pass a
    precomputed :func:`occupied_levels` trace.
    """
    if t is None:
        durations = tuple(1.0 for _ in c.ops)
    else:
        from .timing import gate_duration

        if levels is None:
            levels = occupied_levels(c)
        durations = tuple(
            gate_duration(op, [lv[q] for q in op.qudits], t) for op, lv in zip(c.ops, levels)
        )
    return DepGraph(durations, tuple(dependency_edges(c)))


def depth(c: Circuit) -> int:
    return int(build_dep_graph(c).longest_path())


def layered_depth(c: Circuit) -> int:
    """Greedy ASAP layering; independent of :class:`DepGraph`."""
    layer = [0] * c.n_qudits
    for op in c.ops:
        top = max(layer[q] for q in op.qudits) + 1
        for q in op.qudits:
            layer[q] = top
    return max(layer, default=0)


def occupied_levels(c: Circuit, tracker=None) -> list[dict[int, int]]:
    """Occupied dimension of every operand just before each op executes."""
    from .levels import LevelTracker

    tr = tracker or LevelTracker.for_circuit(c)
    trace = []
    for op in c.ops:
        trace.append({q: tr.occupied(q) for q in op.qudits})
        tr.apply(op)
    return trace
