"""Macro expansion down to one- and two-qudit native gates."""
from __future__ import annotations

from .circuit import Circuit, CircuitError
from .gates import NATIVE, GateApp, Kind
from .swapsynth import synthesize_swap

# Reported cost of one qubit Toffoli: 6 two-qubit + 14 one-qubit gates. The
# emitted Clifford+T sequence has 9 one-qubit gates; the difference is added
# to the circuit's gate count through ``cost_padding_1q``.
QUBIT_TOFFOLI_COST = (6, 14)
QUBIT_TOFFOLI_PADDING = QUBIT_TOFFOLI_COST[1] - 9


def _cx(ctrl: int, tgt: int) -> GateApp:
    return GateApp(Kind.CSHIFT, (tgt,), ((ctrl, 1),), k=1)


def decompose_qubit_toffoli(app: GateApp) -> list[GateApp]:
    """Six-CNOT Clifford+T Toffoli on qubits (depth 11)."""
    if app.kind not in (Kind.MCSHIFT, Kind.CNX) or len(app.controls) != 2:
        raise ValueError("qubit Toffoli needs exactly two controls")
    if app.kind is Kind.MCSHIFT and app.k % 2 == 0:
        return []
    (a, va), (b, vb) = app.controls
    t = app.target
    H = lambda q: GateApp(Kind.H, (q,))  # noqa: E731
    T = lambda q: GateApp(Kind.T, (q,))  # noqa: E731
    Tdg = lambda q: GateApp(Kind.TDG, (q,))  # noqa: E731
    body = [
        H(t), _cx(b, t), Tdg(t), _cx(a, t), T(t), _cx(b, t), Tdg(t), _cx(a, t),
        T(b), T(t), H(t), _cx(a, b), T(a), Tdg(b), _cx(a, b),
    ]
    # zero-valued controls: conjugate with X
    flips = [GateApp(Kind.SHIFT, (q,), k=1) for q, v in app.controls if v == 0]
    if any(v not in (0, 1) for _, v in app.controls):
        raise ValueError("qubit control values must be 0 or 1")
    return flips + body + flips


def cycle_flips(perm) -> list[tuple[int, int]]:
    """Flips whose sequential application realizes ``perm`` (value x -> perm[x]).

    Each cycle (c0 c1 ... cL) with c0 its smallest element becomes
    (c0,c1), (c0,c2), ..., (c0,cL).
    """
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out += [(cyc[0], c) for c in cyc[1:]]
    return out


def _band_rotation(i: int, j: int) -> list[tuple[int, int]]:
    """Involution R with R . X01 . R = Xij, as a list of flips."""
    i, j = sorted((i, j))
    if (i, j) == (0, 1):
        return []
    if i == 0:
        return [(1, j)]
    if i == 1:
        return [(0, j)]
    return [(0, i), (1, j)]


def _controlled_perm(perm, t: int, ctrl: tuple[int, int]) -> list[GateApp]:
    out = []
    for i, j in cycle_flips(perm):
        rot = [GateApp(Kind.FLIP, (t,), ij=f) for f in _band_rotation(i, j)]
        out += rot + [GateApp(Kind.CFLIP, (t,), (ctrl,), ij=(0, 1))] + rot[::-1]
    return out


def _cancel_pairs(ops: list[GateApp]) -> list[GateApp]:
    out: list[GateApp] = []
    for op in ops:
        if out and op.kind is Kind.FLIP and out[-1] == op:
            out.pop()
        else:
            out.append(op)
    return out


def decompose_qudit_toffoli(app: GateApp, dims) -> list[GateApp]:
    """Doubly-controlled shift on an odd-dimensional target.

    Uses t -> t + k iff both controls match, realized as the group
    commutator

        C_b(R) . C_a(X+m) . C_b(R) . C_a(X-m),   R: x -> -x,  m = -k/2 mod d,

    which applies R.X+m.R.X-m = X-2m = X+k when both controls match and the
    identity otherwise. Every controlled permutation is lowered to controlled
    X01 flips with one-qudit band rotations around them; for a qutrit this is
    6 two-qudit and 8 one-qudit gates.

    Even target dimensions are rejected: X+k is then an odd permutation of
    the target, and a commutator is always even.
    """
    if app.kind is not Kind.MCSHIFT or len(app.controls) != 2:
        raise ValueError("qudit Toffoli needs a ccx+k with exactly two controls")
    t = app.target
    d = dims[t]
    if d < 3 or d % 2 == 0:
        raise ValueError(f"qudit Toffoli target must have odd dimension >= 3, got {d}")
    k = app.k % d
    if k == 0:
        return []
    ctrl_a, ctrl_b = app.controls
    m = (-k * pow(2, -1, d)) % d
    refl = tuple((-x) % d for x in range(d))
    up = tuple((x + m) % d for x in range(d))
    down = tuple((x - m) % d for x in range(d))
    seq = (
        _controlled_perm(refl, t, ctrl_b)
        + _controlled_perm(up, t, ctrl_a)
        + _controlled_perm(refl, t, ctrl_b)
        + _controlled_perm(down, t, ctrl_a)
    )
    return _cancel_pairs(seq)


def _expand(op: GateApp, dims) -> tuple[list[GateApp], int]:
    """One expansion step; returns (ops, extra one-qudit cost)."""
    qubits = all(dims[q] == 2 for q in op.qudits)
    if op.kind is Kind.MCSHIFT:
        if len(op.controls) != 2:
            raise ValueError(f"ccx+k with {len(op.controls)} controls has no decomposition")
        if qubits:
            seq = decompose_qubit_toffoli(op)
            return seq, QUBIT_TOFFOLI_PADDING if seq else 0
        return decompose_qudit_toffoli(op, dims), 0
    if op.kind is Kind.CNX:
        if len(op.controls) == 1:
            return [GateApp(Kind.CFLIP, op.targets, op.controls)], 0
        if qubits and len(op.controls) == 2:
            return decompose_qubit_toffoli(op), QUBIT_TOFFOLI_PADDING
        from .bench import cnx_tree_ops

        return cnx_tree_ops(op, dims), 0
    if op.kind is Kind.SWAP:
        a, b = op.targets
        if dims[a] != dims[b]:
            raise ValueError(
                f"swap of qudits {a} (dim {dims[a]}) and {b} (dim {dims[b]}) needs both declared "
                f"at dim {max(dims[a], dims[b])} to expand in place"
            )
        return list(synthesize_swap(dims[a], dims[b], (a, b)).gates), 0
    raise ValueError(f"unknown macro {op.kind.value}")


def decompose_all(c: Circuit) -> Circuit:
    """Expand every macro until only native one- and two-qudit gates remain."""
    dims = c.dims
    out: list[GateApp] = []
    padding = 0
    for idx, op in enumerate(c.ops):
        stack = [op]
        while stack:
            cur = stack.pop()
            if cur.kind in NATIVE:
                out.append(cur)
                continue
            try:
                seq, extra = _expand(cur, dims)
            except ValueError as exc:
                raise CircuitError(f"op {idx}: {exc}") from None
            padding += extra
            stack.extend(reversed(seq))
    if padding == 0 and len(out) == len(c.ops):
        return c
    return c.with_ops(out, cost_padding_1q=c.metadata.get("cost_padding_1q", 0) + padding)


def gate_count(c: Circuit) -> int:
    """Native gate count under the reporting cost model."""
    return len(c.ops) + c.metadata.get("cost_padding_1q", 0)
