"""Line-based QD text format.

    # comment
    # name: cnx-r3-n7
    qudit <id> dim=<d> role=<control|target|ancilla|plain>
    gate <kind> [ctrl=<id>@<value> ...] tgt=<id>[,<id>] [k=<int>] [i=<int> j=<int>]

Comments of the form ``# key: value`` carry metadata. Routed circuits add one
``# virtual: <id> dim=<d> role=<r> @<site>`` line per virtual qudit and a
``# final-mapping: <id>@<site> ...`` trailer.
"""
from __future__ import annotations

from .circuit import Circuit, CircuitError, QuditSpec, _validate_op
from .gates import GateApp, Kind

_INT_META = ("radix", "controls", "ancilla", "cost_padding_1q", "swap_count")
_META_ORDER = ("name", "radix", "controls", "ancilla", "cost_padding_1q", "grid", "swap_count")


class QDParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def format_gate(op: GateApp) -> str:
    parts = ["gate", op.kind.value]
    parts += [f"ctrl={q}@{v}" for q, v in op.controls]
    parts.append("tgt=" + ",".join(map(str, op.targets)))
    if op.kind.is_shift:
        parts.append(f"k={op.k}")
    elif op.kind in (Kind.FLIP, Kind.CFLIP):
        parts += [f"i={op.ij[0]}", f"j={op.ij[1]}"]
    return " ".join(parts)


def _mapping_str(mapping) -> str:
    return " ".join(f"{v}@{s}" for v, s in enumerate(mapping))


def dumps(c: Circuit) -> str:
    lines = []
    meta = {"name": c.name, **c.metadata}
    for key in _META_ORDER:
        if meta.get(key) not in (None, ""):
            lines.append(f"# {key}: {meta[key]}")
    virtual = c.metadata.get("virtual")
    if virtual is not None:
        init = c.metadata["initial_mapping"]
        for q in virtual:
            lines.append(f"# virtual: {q.id} dim={q.dim} role={q.role} @{init[q.id]}")
    for q in c.qudits:
        lines.append(f"qudit {q.id} dim={q.dim} role={q.role}")
    lines += [format_gate(op) for op in c.ops]
    if virtual is not None:
        lines.append(f"# final-mapping: {_mapping_str(c.metadata['final_mapping'])}")
    return "\n".join(lines) + "\n"


def _int(lineno: int, text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise QDParseError(lineno, f"bad {what} {text!r}") from None


def _kv(lineno: int, tokens) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise QDParseError(lineno, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _parse_qudit(lineno: int, tokens) -> QuditSpec:
    if not tokens:
        raise QDParseError(lineno, "qudit needs an id")
    qid = _int(lineno, tokens[0], "qudit id")
    kv = _kv(lineno, tokens[1:])
    unknown = set(kv) - {"dim", "role"}
    if unknown:
        raise QDParseError(lineno, f"unknown qudit field(s) {sorted(unknown)}")
    if "dim" not in kv:
        raise QDParseError(lineno, "qudit needs dim=")
    try:
        return QuditSpec(qid, _int(lineno, kv["dim"], "dim"), kv.get("role", "plain"))
    except CircuitError as exc:
        raise QDParseError(lineno, str(exc)) from None


def _parse_pair(lineno: int, text: str, what: str) -> tuple[int, int]:
    a, sep, b = text.partition("@")
    if not sep:
        raise QDParseError(lineno, f"bad {what} {text!r}, expected <id>@<value>")
    return _int(lineno, a, what), _int(lineno, b, what)


def _parse_gate(lineno: int, tokens) -> GateApp:
    if not tokens:
        raise QDParseError(lineno, "gate needs a kind")
    try:
        kind = Kind.parse(tokens[0])
    except ValueError as exc:
        raise QDParseError(lineno, str(exc)) from None
    controls, rest = [], []
    for tok in tokens[1:]:
        if tok.startswith("ctrl="):
            controls.append(_parse_pair(lineno, tok[5:], "control"))
        else:
            rest.append(tok)
    kv = _kv(lineno, rest)
    unknown = set(kv) - {"tgt", "k", "i", "j"}
    if unknown:
        raise QDParseError(lineno, f"unknown gate field(s) {sorted(unknown)}")
    if "tgt" not in kv:
        raise QDParseError(lineno, "gate needs tgt=")
    targets = tuple(_int(lineno, x, "target") for x in kv["tgt"].split(","))
    k = _int(lineno, kv["k"], "k") if "k" in kv else (1 if kind.is_shift else 0)
    if ("i" in kv) != ("j" in kv):
        raise QDParseError(lineno, "i= and j= go together")
    ij = (_int(lineno, kv["i"], "i"), _int(lineno, kv["j"], "j")) if "i" in kv else (0, 1)
    return GateApp(kind, targets, tuple(controls), k, ij)


def _parse_meta(lineno: int, key: str, value: str, meta: dict, virtual: list) -> None:
    if key == "virtual":
        tokens = value.split()
        if not tokens or not tokens[-1].startswith("@"):
            raise QDParseError(lineno, "virtual line needs a trailing @<site>")
        spec = _parse_qudit(lineno, tokens[:-1])
        virtual.append((spec, _int(lineno, tokens[-1][1:], "site")))
    elif key == "final-mapping":
        pairs = sorted(_parse_pair(lineno, tok, "mapping entry") for tok in value.split())
        if [v for v, _ in pairs] != list(range(len(pairs))):
            raise QDParseError(lineno, "final mapping must cover virtual ids 0..N-1")
        meta["final_mapping"] = tuple(s for _, s in pairs)
    elif key in _INT_META:
        meta[key] = _int(lineno, value, key)
    else:
        meta[key] = value


def loads(text: str) -> Circuit:
    qudits: list[QuditSpec] = []
    ops: list[tuple[int, GateApp]] = []
    meta: dict = {}
    virtual: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition(":")
            if sep and key.strip() and " " not in key.strip():
                _parse_meta(lineno, key.strip(), value.strip(), meta, virtual)
            continue
        head, *tokens = line.split()
        if head == "qudit":
            if ops:
                raise QDParseError(lineno, "qudit declared after the first gate")
            qudits.append(_parse_qudit(lineno, tokens))
        elif head == "gate":
            ops.append((lineno, _parse_gate(lineno, tokens)))
        else:
            raise QDParseError(lineno, f"unknown statement {head!r}")
    for pos, q in enumerate(qudits):
        if q.id != pos:
            raise QDParseError(0, f"qudit ids must be dense 0..N-1, found {q.id} at position {pos}")
    dims = tuple(q.dim for q in qudits)
    for idx, (lineno, op) in enumerate(ops):
        try:
            _validate_op(idx, op, dims)
        except CircuitError as exc:
            raise QDParseError(lineno, str(exc)) from None
    if virtual:
        virtual.sort(key=lambda vs: vs[0].id)
        meta["virtual"] = tuple(v for v, _ in virtual)
        meta["initial_mapping"] = tuple(s for _, s in virtual)
        meta.setdefault("final_mapping", meta["initial_mapping"])
    name = meta.pop("name", "")
    return Circuit(qudits, [op for _, op in ops], name, meta)


def load(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(c: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(c))
