"""Line-based text formats for instances, subgraphs and swap sequences.

All indices in files are 1-based.  ``#`` starts a comment.  Instance files::

    smp 1
    A 3
    B 3
    cap a 1 2          # optional, default 1
    pref a 1 : 1 3 2
    pref b 1 : 1 3 2

Subgraph files hold ``match <i> <j>`` lines and swap sequences hold
``swap a|b <vertex> <position>`` lines, applied in file order.
"""

from __future__ import annotations

from typing import Iterable

from .instance import Edge, Instance, Side, Swap, validate


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, raw, body.split()


def _col(raw: str, token: str) -> int:
    return raw.find(token) + 1


def _int(tok: str, lineno: int, raw: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, _col(raw, tok)) from None


def parse_instance(text: str) -> Instance:
    n = {"A": None, "B": None}
    caps: dict[tuple[str, int], int] = {}
    prefs: dict[tuple[str, int], list[int]] = {}
    where: dict[tuple[str, int], int] = {}
    header = False

    for lineno, raw, toks in _lines(text):
        head = toks[0]
        if not header:
            if toks != ["smp", "1"]:
                raise ParseError("expected header 'smp 1'", lineno, 1)
            header = True
        elif head in ("A", "B") and len(toks) == 2:
            n[head] = _int(toks[1], lineno, raw)
            if n[head] < 0:
                raise ParseError("vertex count must be non-negative", lineno, _col(raw, toks[1]))
        elif head == "cap" and len(toks) == 4 and toks[1] in ("a", "b"):
            key = (toks[1], _int(toks[2], lineno, raw))
            caps[key] = _int(toks[3], lineno, raw)
            where[("cap",) + key] = lineno
        elif head == "pref" and len(toks) >= 4 and toks[1] in ("a", "b") and toks[3] == ":":
            key = (toks[1], _int(toks[2], lineno, raw))
            if key in prefs:
                raise ParseError(f"second list for {key[0]}{key[1]}", lineno, 1)
            prefs[key] = [_int(t, lineno, raw) for t in toks[4:]]
            where[key] = lineno
        else:
            raise ParseError(f"unrecognised line: {raw.strip()!r}", lineno, 1)

    if not header:
        raise ParseError("empty instance file")
    for side in ("A", "B"):
        if n[side] is None:
            raise ParseError(f"missing '{side} <count>' line")

    sizes = {"a": n["A"], "b": n["B"]}
    other = {"a": "b", "b": "a"}
    for (side, v), lst in prefs.items():
        lineno = where[(side, v)]
        if not 1 <= v <= sizes[side]:
            raise ParseError(f"vertex {side}{v} out of range", lineno)
        seen = set()
        for u in lst:
            if not 1 <= u <= sizes[other[side]]:
                raise ParseError(f"entry {u} out of range in list of {side}{v}", lineno)
            if u in seen:
                raise ParseError(f"duplicate entry {u} in list of {side}{v}", lineno)
            seen.add(u)
    for (side, v), c in caps.items():
        lineno = where[("cap", side, v)]
        if not 1 <= v <= sizes[side]:
            raise ParseError(f"vertex {side}{v} out of range", lineno)
        if c < 1:
            raise ParseError(f"capacity < 1 at {side}{v}", lineno)

    def build(side):
        return [[u - 1 for u in prefs.get((side, v), [])] for v in range(1, sizes[side] + 1)]

    inst = Instance(
        build("a"),
        build("b"),
        [caps.get(("a", v), 1) for v in range(1, sizes["a"] + 1)],
        [caps.get(("b", v), 1) for v in range(1, sizes["b"] + 1)],
    )
    problems = validate(inst)
    if problems:
        # Only asymmetric edges can remain; point at the A-side list.
        first = problems[0]
        i = int(first.split("(")[1].split(",")[0]) if first.startswith("asymmetric") else None
        raise ParseError(first, where.get(("a", i)) if i else None)
    return inst


def serialize_instance(instance: Instance) -> str:
    out = ["smp 1", f"A {instance.n_a}", f"B {instance.n_b}"]
    for side in (Side.A, Side.B):
        for v, c in enumerate(instance.caps(side), start=1):
            if c != 1:
                out.append(f"cap {side.value} {v} {c}")
    for side in (Side.A, Side.B):
        for v, pref in enumerate(instance.prefs(side), start=1):
            out.append(" ".join([f"pref {side.value} {v} :", *(str(u + 1) for u in pref)]).rstrip())
    return "\n".join(out) + "\n"


def parse_subgraph(text: str) -> frozenset[Edge]:
    edges = set()
    for lineno, raw, toks in _lines(text):
        if toks[0] != "match" or len(toks) != 3:
            raise ParseError(f"expected 'match <i> <j>', got {raw.strip()!r}", lineno, 1)
        i, j = (_int(t, lineno, raw) for t in toks[1:])
        if i < 1 or j < 1:
            raise ParseError("indices are 1-based", lineno)
        edges.add((i - 1, j - 1))
    return frozenset(edges)


def serialize_subgraph(edges: Iterable[Edge]) -> str:
    return "".join(f"match {i + 1} {j + 1}\n" for i, j in sorted(edges))


def parse_sequence(text: str) -> list[Swap]:
    seq = []
    for lineno, raw, toks in _lines(text):
        if toks[0] != "swap" or len(toks) != 4 or toks[1] not in ("a", "b"):
            raise ParseError(f"expected 'swap a|b <vertex> <position>', got {raw.strip()!r}", lineno, 1)
        v, p = (_int(t, lineno, raw) for t in toks[2:])
        if v < 1 or p < 1:
            raise ParseError("indices are 1-based", lineno)
        seq.append(Swap(Side(toks[1]), v - 1, p - 1))
    return seq


def serialize_sequence(seq: Iterable[Swap]) -> str:
    return "".join(f"swap {s.side.value} {s.vertex + 1} {s.position + 1}\n" for s in seq)
