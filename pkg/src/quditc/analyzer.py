"""Gate count, depth, duration and space-time metrics; sweep and CSV output."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from math import comb

from .bench import gen_cnx
from .circuit import Circuit, DepGraph, build_dep_graph, dependency_edges, depth, occupied_levels
from .decompose import decompose_all, gate_count
from .gates import Kind
from .layout import place
from .router import route
from .timing import TimingTable
from .topology import CapacityError, Topology

CSV_FIELDS = (
    "controls",
    "radix",
    "gates_pre",
    "gates_post",
    "swap_count",
    "depth_pre",
    "depth_post",
    "swap_decomposed_depth_post",
    "duration_ns",
    "qudits_used",
    "space_time",
)


@dataclass(frozen=True)
class MetricsRow:
    controls: int
    radix: int
    gates_pre: int | None = None
    gates_post: int | None = None
    swap_count: int | None = None
    depth_pre: int | None = None
    depth_post: int | None = None
    swap_decomposed_depth_post: int | None = None
    duration_ns: float | None = None
    qudits_used: int | None = None
    space_time: float | None = None
    swap_flips: int | None = None  # SWAPs counted as their native flips; JSON only

    @property
    def feasible(self) -> bool:
        return self.gates_pre is not None

    def as_dict(self) -> dict:
        return asdict(self)


def duration(c: Circuit, t: TimingTable) -> float:
    """Longest duration-weighted path through the dependency DAG."""
    return build_dep_graph(c, t).longest_path()


def _swap_flip_weights(c: Circuit) -> list[int]:
    """Per-op weight with each SWAP replaced by its flip count at occupied dims."""
    out = []
    for op, lv in zip(c.ops, occupied_levels(c)):
        if op.kind is Kind.SWAP:
            out.append(3 * comb(max(lv[q] for q in op.targets), 2))
        else:
            out.append(1)
    return out


def swap_decomposed_depth(c: Circuit, weights=None) -> int:
    weights = weights or _swap_flip_weights(c)
    g = DepGraph(tuple(float(w) for w in weights), tuple(dependency_edges(c)))
    return int(g.longest_path())


def _same_registry(pre: Circuit, post: Circuit) -> None:
    virt = post.metadata.get("virtual", post.qudits)
    if [(q.dim, q.role) for q in pre.qudits] != [(q.dim, q.role) for q in virt]:
        raise ValueError("pre and post circuits have different qudit registries")


def metrics(c_pre: Circuit, c_post: Circuit, t: TimingTable, controls=None, radix=None) -> MetricsRow:
    """Metrics for a native circuit and its routed form.

    SWAPs count as one gate and one layer; ``swap_decomposed_depth_post`` and
    ``swap_flips`` count them as their native flips instead.
    """
    _same_registry(c_pre, c_post)
    controls = controls if controls is not None else c_pre.metadata.get("controls")
    radix = radix if radix is not None else c_pre.metadata.get("radix")
    swaps = c_post.count(Kind.SWAP)
    flip_w = _swap_flip_weights(c_post)
    dur = duration(c_post, t)
    used = c_pre.n_qudits
    gates_pre = gate_count(c_pre)
    return MetricsRow(
        controls=controls,
        radix=radix,
        gates_pre=gates_pre,
        gates_post=gates_pre + swaps,
        swap_count=swaps,
        depth_pre=depth(c_pre),
        depth_post=depth(c_post),
        swap_decomposed_depth_post=swap_decomposed_depth(c_post, flip_w),
        duration_ns=dur,
        qudits_used=used,
        space_time=used * dur,
        swap_flips=sum(w for op, w in zip(c_post.ops, flip_w) if op.kind is Kind.SWAP),
    )


def compile_circuit(c: Circuit, topo: Topology, t: TimingTable):
    """Decompose, place and route; returns ``(native, mapping, routed)``."""
    native = decompose_all(c)
    mapping = place(native, topo, t)
    return native, mapping, route(native, topo, t, mapping)


def sweep_row(radix: int, n: int, topo: Topology, t: TimingTable) -> MetricsRow:
    try:
        native, _, routed = compile_circuit(gen_cnx(n, radix), topo, t)
    except CapacityError:
        return MetricsRow(controls=n, radix=radix)
    return metrics(native, routed, t, n, radix)


def _row_job(args):
    return sweep_row(*args)


def sweep(radices, controls, topo: Topology, t: TimingTable, jobs: int = 1) -> list[MetricsRow]:
    """One row per (radix, n), sorted by radix then n; infeasible rows stay empty."""
    tasks = [(r, n, topo, t) for r in sorted(set(radices)) for n in sorted(set(controls))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row_job, tasks))
    return [sweep_row(*task) for task in tasks]


def _fmt(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, float):
        return str(int(v)) if v.is_integer() else f"{v:.3f}"
    return str(v)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in sorted(rows, key=lambda r: (r.radix, r.controls)):
        w.writerow([_fmt(getattr(row, f)) for f in CSV_FIELDS])
    return buf.getvalue()


def write_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))


def read_csv(path) -> list[MetricsRow]:
    """Parse a CSV written by :func:`write_csv` (``NA`` becomes ``None``)."""
    types = {f.name: f.type for f in fields(MetricsRow)}
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            vals = {}
            for k, v in rec.items():
                if v == "NA":
                    vals[k] = None
                elif "float" in str(types[k]):
                    vals[k] = float(v)
                else:
                    vals[k] = int(v)
            out.append(MetricsRow(**vals))
    return out
