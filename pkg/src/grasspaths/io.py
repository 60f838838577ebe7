"""JSON documents read and written by the CLI.

Graph::

    {"n": 3, "edges": [{"src": 1, "dst": 2, "weight": "1/2"}, ...]}

Query (every key optional)::

    {"A": [1, 2], "B": [3], "I": [], "J": []}

Matrix::

    {"entries": [["0", "-5"], ["5", "0"]]}

Weights and entries are strings so no binary float ever touches a value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arith import RationalMatrix, format_rational, index_set, parse_rational
from .digraph import Digraph
from .errors import IndexOutOfRange, ParseError


def _load(source: str | Path) -> Any:
    try:
        text = Path(source).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError(f"no such file: {source}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{source}: invalid JSON ({err.msg} at line {err.lineno})") from None


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass
class GraphDocument:
    n: int
    edges: list[tuple[int, int, Fraction]] = field(default_factory=list)

    @classmethod
    def from_obj(cls, obj: Any) -> GraphDocument:
        if not isinstance(obj, dict) or "n" not in obj:
            raise ParseError("graph document must be an object with 'n' and 'edges'")
        n = _int(obj["n"], "n")
        if n < 0:
            raise ParseError("n must be non-negative")
        raw_edges = obj.get("edges", [])
        if not isinstance(raw_edges, list):
            raise ParseError("'edges' must be a list")
        edges = []
        for k, e in enumerate(raw_edges, start=1):
            if not isinstance(e, dict) or not {"src", "dst", "weight"} <= e.keys():
                raise ParseError(f"edge #{k} needs 'src', 'dst' and 'weight'")
            src = _int(e["src"], f"edge #{k} src")
            dst = _int(e["dst"], f"edge #{k} dst")
            if not (1 <= src <= n and 1 <= dst <= n):
                raise ParseError(f"edge #{k} {src}->{dst} outside vertices 1..{n}")
            edges.append((src, dst, parse_rational(e["weight"])))
        return cls(n, edges)

    @classmethod
    def load(cls, source: str | Path) -> GraphDocument:
        return cls.from_obj(_load(source))

    @classmethod
    def from_digraph(cls, g: Digraph) -> GraphDocument:
        return cls(g.n, [(e.src, e.dst, e.weight) for e in g.edges])

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "edges": [
                {"src": s, "dst": d, "weight": format_rational(w)} for s, d, w in self.edges
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_obj(), indent=2) + "\n"

    def to_digraph(self) -> Digraph:
        return Digraph(self.n, self.edges)


@dataclass
class QueryDocument:
    A: tuple[int, ...] = ()
    B: tuple[int, ...] = ()
    I: tuple[int, ...] = ()
    J: tuple[int, ...] = ()

    @classmethod
    def from_obj(cls, obj: Any, n: int | None = None) -> QueryDocument:
        if not isinstance(obj, dict):
            raise ParseError("query document must be an object")
        unknown = set(obj) - {"A", "B", "I", "J"}
        if unknown:
            raise ParseError(f"unknown query keys {sorted(unknown)}")
        sets = {}
        for key, value in obj.items():
            if not isinstance(value, list):
                raise ParseError(f"query set {key} must be a list")
            sets[key] = parse_index_list(value, n, key)
        return cls(**sets)

    @classmethod
    def load(cls, source: str | Path, n: int | None = None) -> QueryDocument:
        return cls.from_obj(_load(source), n)

    def to_obj(self) -> dict:
        return {"A": list(self.A), "B": list(self.B), "I": list(self.I), "J": list(self.J)}


def parse_index_list(values, n: int | None, name: str = "index set") -> tuple[int, ...]:
    """Accept a list of ints or a comma-separated string like ``"1,3"``."""
    if isinstance(values, str):
        parts = [p.strip() for p in values.split(",") if p.strip()]
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"{name}: expected comma-separated integers, got {values!r}") from None
    ints = [_int(v, name) for v in values]
    try:
        return index_set(ints, n)
    except IndexOutOfRange:
        raise ParseError(f"{name} {tuple(ints)} outside 1..{n}") from None
    except ValueError:
        raise ParseError(f"{name} {tuple(ints)} must be strictly increasing") from None


def load_matrix(source: str | Path) -> RationalMatrix:
    obj = _load(source)
    if not isinstance(obj, dict) or not isinstance(obj.get("entries"), list):
        raise ParseError("matrix document must be an object with an 'entries' list")
    rows = obj["entries"]
    if any(not isinstance(r, list) for r in rows):
        raise ParseError("'entries' must be a list of lists")
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise ParseError("ragged matrix rows")
    return RationalMatrix([[parse_rational(x) for x in r] for r in rows], cols=width)


def matrix_to_obj(m: RationalMatrix) -> dict:
    return {"entries": [[format_rational(x) for x in row] for row in m]}
