"""Exhaustive basis-state simulation used as the correctness oracle.

Permutation circuits run on integer digit vectors (batched with numpy).
Circuits holding the qubit phase gates of a decomposed Toffoli fall back to
a sparse amplitude map per input; an output that is not a single basis state
is reported as an error rather than compared.
"""
from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

from .circuit import Circuit
from .gates import Kind, apply_classical

FULL_LIMIT = (6, 5)  # at most 6 qudits, each of dim <= 5
BINARY_LIMIT = 12  # free binary qudits (ancilla are pinned to 0)
_EPS = 1e-9
_T = cmath.exp(1j * math.pi / 4)
_SQ = 1 / math.sqrt(2)


class SimulationError(RuntimeError):
    pass


class DomainTooLarge(ValueError):
    pass


def is_classical(c: Circuit) -> bool:
    return all(op.kind.is_classical for op in c.ops)


def run(c: Circuit, state) -> tuple[int, ...]:
    """Run ``c`` on one basis state and return the output basis state."""
    if is_classical(c):
        cur = list(state)
        dims = c.dims
        for idx, op in enumerate(c.ops):
            try:
                apply_classical(op, cur, dims)
            except ValueError as exc:
                raise SimulationError(f"op {idx}: {exc}") from None
        return tuple(cur)
    return _run_sparse(c, tuple(state))


def _run_sparse(c: Circuit, state: tuple[int, ...]) -> tuple[int, ...]:
    dims = c.dims
    amps = {state: 1 + 0j}
    for idx, op in enumerate(c.ops):
        nxt: dict[tuple[int, ...], complex] = {}
        q = op.target
        for key, amp in amps.items():
            if op.kind is Kind.H:
                bit = key[q]
                for out in (0, 1):
                    sign = -1 if (bit and out) else 1
                    k2 = key[:q] + (out,) + key[q + 1:]
                    nxt[k2] = nxt.get(k2, 0) + sign * _SQ * amp
            elif op.kind in (Kind.T, Kind.TDG):
                ph = _T if op.kind is Kind.T else _T.conjugate()
                nxt[key] = nxt.get(key, 0) + (ph * amp if key[q] else amp)
            else:
                cur = list(key)
                try:
                    apply_classical(op, cur, dims)
                except ValueError as exc:
                    raise SimulationError(f"op {idx}: {exc}") from None
                k2 = tuple(cur)
                nxt[k2] = nxt.get(k2, 0) + amp
        amps = {k: a for k, a in nxt.items() if abs(a) > _EPS}
    if len(amps) != 1:
        raise SimulationError(f"output is a superposition of {len(amps)} basis states")
    (out, amp), = amps.items()
    if abs(abs(amp) - 1) > 1e-6:
        raise SimulationError(f"output amplitude {amp} is not unit")
    return out


def run_batch(c: Circuit, inputs: np.ndarray) -> np.ndarray:
    """Run every row of ``inputs`` through ``c``."""
    if not is_classical(c):
        return np.array([run(c, row) for row in inputs.tolist()], dtype=np.int16).reshape(inputs.shape)
    dims = c.dims
    s = np.array(inputs, dtype=np.int16, copy=True)
    for idx, op in enumerate(c.ops):
        mask = np.ones(len(s), dtype=bool)
        for q, v in op.controls:
            mask &= s[:, q] == v
        if op.kind is Kind.SWAP:
            a, b = op.targets
            if (s[:, a] >= dims[b]).any() or (s[:, b] >= dims[a]).any():
                raise SimulationError(f"op {idx}: swap of {a},{b} overflows a dimension")
            s[:, [a, b]] = s[:, [b, a]]
            continue
        t = op.target
        col = s[:, t]
        if op.kind.is_shift:
            s[:, t] = np.where(mask, (col + op.k) % dims[t], col)
        else:
            i, j = op.ij
            s[:, t] = np.where(mask & (col == i), j, np.where(mask & (col == j), i, col))
    return s


def _virtual(c: Circuit):
    return c.metadata.get("virtual", c.qudits)


def _embed(c: Circuit, virt: np.ndarray) -> np.ndarray:
    mapping = c.metadata.get("initial_mapping")
    if mapping is None:
        return virt
    reg = np.zeros((len(virt), c.n_qudits), dtype=np.int16)
    reg[:, list(mapping)] = virt
    return reg


def _extract(c: Circuit, reg: np.ndarray, unpermute=None) -> np.ndarray:
    """Virtual outputs; empty sites that end nonzero are appended as columns."""
    mapping = unpermute if unpermute is not None else c.metadata.get("final_mapping")
    if c.metadata.get("initial_mapping") is None:
        return reg if mapping is None else reg[:, list(mapping)]
    mapping = list(mapping)
    empty = sorted(set(range(c.n_qudits)) - set(mapping))
    return np.concatenate([reg[:, mapping], reg[:, empty]], axis=1)


def input_domain(qudits, domain: str = "binary") -> np.ndarray:
    if domain == "binary":
        free = [q.id for q in qudits if q.role != "ancilla"]
        if len(free) > BINARY_LIMIT:
            raise DomainTooLarge(f"binary domain over {len(free)} qudits exceeds {BINARY_LIMIT}")
        rows = np.zeros((2 ** len(free), len(qudits)), dtype=np.int16)
        for r, bits in enumerate(itertools.product((0, 1), repeat=len(free))):
            rows[r, free] = bits
        return rows
    if domain == "full":
        nq, dmax = FULL_LIMIT
        dims = [q.dim for q in qudits]
        if len(dims) > nq or max(dims, default=2) > dmax:
            raise DomainTooLarge(
                f"full basis over {len(dims)} qudits (dims {dims}) exceeds {nq} qudits of dim <= {dmax}"
            )
        return np.array(list(itertools.product(*(range(d) for d in dims))), dtype=np.int16).reshape(
            -1, len(dims)
        )
    raise ValueError(f"unknown domain {domain!r}")


def outputs(c: Circuit, virt_inputs: np.ndarray, unpermute=None) -> np.ndarray:
    return _extract(c, run_batch(c, _embed(c, virt_inputs)), unpermute)


def equivalent(c1: Circuit, c2: Circuit, domain: str = "binary", unpermute=None):
    """Exhaustively compare two circuits over a virtual input domain.

    Either circuit may be routed; routed outputs are read back through the
    final mapping (or ``unpermute`` for ``c2``). Returns ``(True, None)`` or
    ``(False, (input, out1, out2))`` for the first mismatch.
    """
    v1, v2 = _virtual(c1), _virtual(c2)
    if [(q.dim, q.role) for q in v1] != [(q.dim, q.role) for q in v2]:
        raise ValueError("circuits have different virtual registries")
    inputs = input_domain(v1, domain)
    o1 = outputs(c1, inputs)
    o2 = outputs(c2, inputs, unpermute)
    width = min(o1.shape[1], o2.shape[1])
    bad = (o1[:, :width] != o2[:, :width]).any(axis=1)
    for extra in (o1[:, width:], o2[:, width:]):
        if extra.shape[1]:
            bad |= (extra != 0).any(axis=1)
    if not bad.any():
        return True, None
    r = int(np.argmax(bad))
    return False, (tuple(inputs[r].tolist()), tuple(o1[r].tolist()), tuple(o2[r].tolist()))


def mirror(c: Circuit) -> Circuit:
    return c.with_ops([op.inverse() for op in reversed(c.ops)])
