"""Generalized Toffoli (n-controlled X) generators at each radix.

Intermediate-qudit trees lay the controls out as a heap: node ``p`` has
children ``a*p+1 .. a*p+a`` for arity ``a`` (2 for qutrits, radix-2 above),
filled left to right. Above radix 3 a node is *active* when it holds
``1 + #children``: each active child adds one to its parent, so a parent
reaches its own active value only if it started at 1 and every child is
active. Qutrit siblings instead raise their parent once, jointly, with a
doubly-controlled +1, and active internal qutrits hold 2. The root's
active value controls the flip on the target, then the tree is uncomputed
in mirror order.
"""
from __future__ import annotations

from .circuit import Circuit, QuditSpec
from .gates import GateApp, Kind


def heap_children(n: int, arity: int) -> list[list[int]]:
    return [[c for c in range(arity * p + 1, arity * p + arity + 1) if c < n] for p in range(n)]


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"need at least 2 controls, got {n}")


def _mirror(compute: list[GateApp], middle: list[GateApp]) -> list[GateApp]:
    return compute + middle + [g.inverse() for g in reversed(compute)]


def _toffoli(a: int, b: int, t: int) -> GateApp:
    return GateApp(Kind.MCSHIFT, (t,), ((a, 1), (b, 1)), k=1)


def gen_qubit_cnx(n: int) -> Circuit:
    """Log-depth qubit CnX: AND-tree of Toffolis into n-2 ancilla."""
    _check_n(n)
    target = n
    qudits = [QuditSpec(q, 2, "control") for q in range(n)] + [QuditSpec(n, 2, "target")]
    level = list(range(n))
    compute = []
    while len(level) > 2:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            anc = len(qudits)
            qudits.append(QuditSpec(anc, 2, "ancilla"))
            compute.append(_toffoli(level[i], level[i + 1], anc))
            nxt.append(anc)
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    ops = _mirror(compute, [_toffoli(level[0], level[1], target)])
    ancilla = len(qudits) - n - 1
    return Circuit(qudits, ops, f"cnx-r2-n{n}", {"radix": 2, "controls": n, "ancilla": ancilla})


def _tree_ops(controls: list[int], target: int, radix: int) -> list[GateApp]:
    n = len(controls)
    arity = 2 if radix == 3 else radix - 2
    kids = heap_children(n, arity)
    # a qutrit parent gets a single increment from its joint-controlled gate
    active = [1 + (min(len(ch), 1) if radix == 3 else len(ch)) for ch in kids]
    compute = []
    for p in reversed(range(n)):
        ch = kids[p]
        if not ch:
            continue
        ctrls = tuple((controls[c], active[c]) for c in ch)
        if radix == 3 and len(ch) == 2:
            compute.append(GateApp(Kind.MCSHIFT, (controls[p],), ctrls, k=1))
        else:
            compute += [GateApp(Kind.CSHIFT, (controls[p],), (cv,), k=1) for cv in ctrls]
    root = GateApp(Kind.CFLIP, (target,), ((controls[0], active[0]),))
    return _mirror(compute, [root])


def _tree_circuit(n: int, radix: int) -> Circuit:
    qudits = [QuditSpec(q, radix, "control") for q in range(n)] + [QuditSpec(n, 2, "target")]
    ops = _tree_ops(list(range(n)), n, radix)
    return Circuit(qudits, ops, f"cnx-r{radix}-n{n}", {"radix": radix, "controls": n, "ancilla": 0})


def gen_qutrit_cnx(n: int) -> Circuit:
    """Ancilla-free qutrit CnX; sibling pairs raise their parent with a ccx+k."""
    _check_n(n)
    return _tree_circuit(n, 3)


def gen_general_cnx(n: int, radix: int) -> Circuit:
    """Ancilla-free CnX for radix >= 4 using only two-qudit gates."""
    _check_n(n)
    if not 4 <= radix <= 7:
        raise ValueError(f"general tree needs radix in 4..7, got {radix}")
    return _tree_circuit(n, radix)


def gen_ququart_cnx(n: int) -> Circuit:
    return gen_general_cnx(n, 4)


def gen_cnx(n: int, radix: int) -> Circuit:
    if radix == 2:
        return gen_qubit_cnx(n)
    if radix == 3:
        return gen_qutrit_cnx(n)
    return gen_general_cnx(n, radix)


def cnx_tree_ops(app: GateApp, dims) -> list[GateApp]:
    """Expand a ``cnx`` macro in place via the intermediate-qudit tree."""
    ctrls = [q for q, _ in app.controls]
    if any(v != 1 for _, v in app.controls):
        raise ValueError("cnx expansion needs control values of 1")
    radix = min(dims[q] for q in ctrls)
    if radix < 3:
        raise ValueError("qubit cnx with more than 2 controls needs ancilla; use the qubit generator")
    return _tree_ops(ctrls, app.target, min(radix, 7))
