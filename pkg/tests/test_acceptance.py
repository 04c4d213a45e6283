"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line with its measured values; the lines are
printed together in the terminal summary (see conftest) and also when this
file is run as a script.
"""
import itertools
import statistics
import sys
import time

import pytest

from quditc import sim
from quditc.analyzer import compile_circuit, rows_to_csv, sweep, sweep_row
from quditc.bench import gen_cnx
from quditc.decompose import decompose_all
from quditc.router import adjacency_violations
from quditc.swapsynth import synthesize_swap
from quditc.timing import interpolate, load_default
from quditc.gates import apply_classical
from quditc.topology import Topology

RESULTS: list[str] = []

RADICES = (2, 3, 4, 5)
SWEEP_N = tuple(range(5, 66, 5))
EXTRA_N = (16, 32, 64)
GRID = Topology(12, 12)


def record(label: str, ok: bool, detail: str) -> None:
    RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def table():
    return load_default()


@pytest.fixture(scope="module")
def full_sweep(table):
    t0 = time.perf_counter()
    rows = sweep(RADICES, SWEEP_N, GRID, table)
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def by(full_sweep, table):
    rows = {(r.radix, r.controls): r for r in full_sweep[0]}
    for radix, n in itertools.product(RADICES, EXTRA_N):
        rows[radix, n] = sweep_row(radix, n, GRID, table)
    return rows


def test_c1_swap_correctness():
    t0 = time.perf_counter()
    bad = []
    for a, b in itertools.product(range(2, 6), repeat=2):
        plan = synthesize_swap(a, b)
        d = max(a, b)
        if len(plan.gates) != 3 * d * (d - 1) // 2:
            bad.append((a, b, "count"))
        for x, y in itertools.product(range(d), repeat=2):
            s = [x, y]
            for g in plan.gates:
                apply_classical(g, s, (d, d))
            if s != [y, x]:
                bad.append((a, b, x, y))
    dt = time.perf_counter() - t0
    qutrit = len(synthesize_swap(3, 3).gates)
    record("C1 swap correctness", not bad and qutrit == 9 and dt < 1,
           f"16 dim pairs exhaustive, qutrit plan {qutrit} gates, {dt:.2f}s, failures={bad[:3]}")


def test_c2_benchmark_correctness():
    t0 = time.perf_counter()
    bad = []
    for radix, n in itertools.product(RADICES, range(2, 11)):
        c = gen_cnx(n, radix)
        if radix >= 3 and c.metadata["ancilla"] != 0:
            bad.append((radix, n, "ancilla"))
        inputs = sim.input_domain(c.qudits)
        expect = inputs.copy()
        expect[:, n] ^= inputs[:, :n].all(axis=1)
        if not (sim.outputs(c, inputs) == expect).all():
            bad.append((radix, n))
    dt = time.perf_counter() - t0
    record("C2 benchmark correctness", not bad and dt < 30,
           f"radix 2-5 x n 2-10 exhaustive, {dt:.1f}s, failures={bad}")


def test_c3_routing_legality_and_semantics(table):
    t0 = time.perf_counter()
    bad, ops2 = [], 0
    for radix, n in itertools.product(RADICES, range(2, 11)):
        src = gen_cnx(n, radix)
        _, _, routed = compile_circuit(src, GRID, table)
        ops2 += sum(len(op.qudits) == 2 for op in routed.ops)
        if adjacency_violations(routed, GRID):
            bad.append((radix, n, "adjacency"))
        ok, cex = sim.equivalent(src, routed)
        if not ok:
            bad.append((radix, n, cex))
    dt = time.perf_counter() - t0
    record("C3 routing legality + semantics", not bad and dt < 120,
           f"{ops2} routed 2-qudit ops all adjacent, routed == source on all binary inputs, {dt:.1f}s, failures={bad}")


def test_c4_timing_fidelity(table):
    import dataclasses

    reference = {
        (1, 1): (500, 900), (1, 2): (500, 1200), (1, 3): (500, 1500), (1, 4): (600, 1800),
        (2, 2): (675, 2950), (2, 3): (850, 5000), (2, 4): (1025, 7050), (3, 3): (850, 5000),
        (3, 4): (1025, 7050), (4, 4): (1200, 7500),
    }
    verbatim = table.single == {1: 30, 2: 50, 3: 50, 4: 50} and all(
        (table.interaction_time(*k), table.swap_time(*k)) == v for k, v in reference.items()
    )
    partial = dataclasses.replace(table, interaction={k: v for k, v in table.interaction.items() if k != (2, 2)})
    recovered = interpolate(partial).interaction_time(2, 2)
    record("C4 timing model fidelity", verbatim and recovered == 675,
           f"default table verbatim={verbatim}, interpolated (2,2) interaction={recovered:g} ns")


def test_c5_determinism(full_sweep, table):
    first = rows_to_csv(full_sweep[0])
    second = rows_to_csv(sweep(RADICES, SWEEP_N, GRID, table))
    record("C5 determinism", first == second, f"two full sweeps, {len(first)} bytes each, identical={first == second}")


def test_full_sweep_time(full_sweep):
    rows, dt = full_sweep
    record("Full sweep under 10 minutes", dt < 600, f"{len(rows)} rows in {dt:.1f}s")


def test_c6_pre_routing_depth_order(by):
    parts, ok = [], True
    for n in EXTRA_N:
        q2, q3, q4, q5 = (by[r, n].depth_pre for r in RADICES)
        good = q3 > q2 and q4 < q3 and abs(q5 - q4) <= 0.10 * q4
        ok &= good
        parts.append(f"n={n}: qubit {q2}, qutrit {q3}, ququart {q4}, ququint {q5}{'' if good else ' (deviation)'}")
    record("C6 pre-routing depth ordering", ok, "; ".join(parts))


def test_c7_post_routing_depth(by):
    ns = sorted({n for (_, n) in by if n >= 16})
    lower = [n for n in ns if not by[3, n].depth_post < by[2, n].depth_post]
    ratios = {n: by[3, n].depth_post / by[4, n].depth_post for n in ns}
    out = [n for n, r in ratios.items() if not 3 <= r <= 8]
    record("C7 post-routing depth reversal", not lower and not out,
           f"qutrit < qubit fails at {lower}; qutrit/ququart ratio {min(ratios.values()):.2f}-{max(ratios.values()):.2f}"
           f", outside [3,8] at {out}")


def test_c8_duration_crossover(by):
    small = [n for n in SWEEP_N if n <= 15]
    large = [n for n in SWEEP_N if n >= 50]
    dur = {n: (by[2, n].duration_ns, by[3, n].duration_ns) for n in SWEEP_N}
    small_bad = [n for n in small if not dur[n][1] < dur[n][0]]
    large_bad = [n for n in large if not dur[n][1] > dur[n][0]]
    cross = next((n for n in SWEEP_N if dur[n][1] > dur[n][0]), None)
    detail = ", ".join(f"n={n} {dur[n][1] / dur[n][0]:.2f}" for n in SWEEP_N)
    record("C8 duration crossover",
           not small_bad and not large_bad and cross is not None and 15 <= cross <= 50,
           f"qutrit/qubit duration {detail}; first crossover n={cross}; "
           f"small-n violations {small_bad}, large-n violations {large_bad}")


def test_c9_space_time_ratios(by):
    window = [n for n in SWEEP_N if 40 <= n <= 65]

    def mean_ratio(a, b):
        return statistics.mean(by[a, n].space_time / by[b, n].space_time for n in window)

    r23, r24, r34 = mean_ratio(2, 3), mean_ratio(2, 4), mean_ratio(3, 4)
    small = [by[2, n].space_time / by[3, n].space_time for n in (5, 10)]
    checks = {
        "qubit/qutrit": 1.4 <= r23 <= 2.2,
        "qubit/ququart": 1.8 <= r24 <= 2.8,
        "qutrit/ququart": 1.1 <= r34 <= 1.8,
        "small-n qubit/qutrit": min(small) >= 2.2,
    }
    failed = [k for k, v in checks.items() if not v]
    record("C9 space-time ratios", not failed,
           f"mean over n=40..65: qubit/qutrit {r23:.2f} [1.4,2.2], qubit/ququart {r24:.2f} [1.8,2.8], "
           f"qutrit/ququart {r34:.2f} [1.1,1.8]; n=5,10 qubit/qutrit {small[0]:.2f},{small[1]:.2f} (>=2.2); "
           f"out of band: {failed}")


def test_c10_diminishing_returns(by):
    ns = [n for n in SWEEP_N if 10 <= n <= 60]
    hits = [n for n in ns if by[5, n].duration_ns >= by[4, n].duration_ns]
    frac = len(hits) / len(ns)
    record("C10 diminishing returns", frac >= 0.8,
           f"ququint >= ququart duration at {len(hits)}/{len(ns)} of n=10..60 ({frac:.0%}, need 80%); "
           f"misses {sorted(set(ns) - set(hits))}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
