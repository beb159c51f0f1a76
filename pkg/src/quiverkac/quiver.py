"""Quivers, dimension vectors and the quiver text format.

File format (UTF-8, ``#`` starts a comment, blank lines are ignored)::

    vertices 3
    edge 1 2
    edge 2 3
    edge 2 3      # repeat a line for a multiple edge
    edge 1 1      # a loop

Vertices are 1-based in files and on the command line, 0-based in memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

__all__ = [
    "Quiver",
    "QuiverSyntaxError",
    "LoopNotAllowed",
    "parse_quiver",
    "load_quiver",
    "serialize_quiver",
    "parse_dimvector",
    "half_dimension",
    "cartan_matrix",
]

DimVector = Tuple[int, ...]


class QuiverSyntaxError(ValueError):
    def __init__(self, message: str, line: int = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class LoopNotAllowed(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """Vertex count ``n`` and a multiset of 0-based edges ``(source, target)``."""

    n: int
    edges: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a quiver needs at least one vertex")
        object.__setattr__(self, "edges", tuple((int(s), int(t)) for s, t in self.edges))
        for s, t in self.edges:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ValueError(f"edge ({s + 1},{t + 1}) refers to a vertex outside 1..{self.n}")

    def b(self, i: int, j: int) -> int:
        """Number of edges between i and j, either orientation (i != j)."""
        return sum(1 for s, t in self.edges if {s, t} == {i, j}) if i != j else 0

    def adjacency(self) -> List[List[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for s, t in self.edges:
            if s != t:
                m[s][t] += 1
                m[t][s] += 1
        return m

    def loops(self) -> List[int]:
        out = [0] * self.n
        for s, t in self.edges:
            if s == t:
                out[s] += 1
        return out

    @property
    def has_loops(self) -> bool:
        return any(s == t for s, t in self.edges)

    def reversed(self) -> "Quiver":
        return Quiver(self.n, tuple((t, s) for s, t in self.edges))

    def check_dim(self, v: Sequence[int], name: str = "dimension vector") -> DimVector:
        v = tuple(int(x) for x in v)
        if len(v) != self.n:
            raise ValueError(f"{name} {v} has length {len(v)}, quiver has {self.n} vertices")
        if any(x < 0 for x in v):
            raise ValueError(f"{name} {v} has negative entries")
        return v

    def require_loop_free(self):
        if self.has_loops:
            raise LoopNotAllowed("this computation needs a quiver without loops")

    # a few standard quivers, handy in tests and docs
    @classmethod
    def single_vertex(cls) -> "Quiver":
        return cls(1)

    @classmethod
    def jordan(cls) -> "Quiver":
        return cls(1, ((0, 0),))

    @classmethod
    def kronecker(cls, m: int = 2) -> "Quiver":
        return cls(2, ((0, 1),) * m)

    @classmethod
    def path(cls, n: int) -> "Quiver":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Quiver":
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))


def parse_quiver(text: str) -> Quiver:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n is None:
            if tok[0] != "vertices" or len(tok) != 2:
                raise QuiverSyntaxError("expected 'vertices <n>'", lineno)
            try:
                n = int(tok[1])
            except ValueError:
                raise QuiverSyntaxError(f"bad vertex count {tok[1]!r}", lineno) from None
            if n < 1:
                raise QuiverSyntaxError("vertex count must be positive", lineno)
            continue
        if tok[0] != "edge" or len(tok) != 3:
            raise QuiverSyntaxError(f"expected 'edge <i> <j>', got {line!r}", lineno)
        try:
            i, j = int(tok[1]), int(tok[2])
        except ValueError:
            raise QuiverSyntaxError(f"bad vertex index in {line!r}", lineno) from None
        for x in (i, j):
            if not 1 <= x <= n:
                raise QuiverSyntaxError(f"vertex {x} out of range 1..{n}", lineno)
        edges.append((i - 1, j - 1))
    if n is None:
        raise QuiverSyntaxError("missing 'vertices <n>' line")
    return Quiver(n, tuple(edges))


def load_quiver(path) -> Quiver:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def serialize_quiver(q: Quiver) -> str:
    lines = [f"vertices {q.n}"]
    lines += [f"edge {s + 1} {t + 1}" for s, t in q.edges]
    return "\n".join(lines) + "\n"


def parse_dimvector(text: str) -> DimVector:
    """Parse ``"1,2,1"`` into ``(1, 2, 1)``."""
    try:
        v = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad dimension vector {text!r}: expected comma-separated integers") from None
    if any(x < 0 for x in v):
        raise ValueError(f"bad dimension vector {text!r}: entries must be nonnegative")
    return v


def half_dimension(q: Quiver, v: Sequence[int], w: Sequence[int]) -> int:
    """d_{v,w} = sum_e v_s(e) v_t(e) + sum_i v_i (w_i - v_i); may be negative."""
    v = q.check_dim(v, "v")
    w = q.check_dim(w, "w")
    return sum(v[s] * v[t] for s, t in q.edges) + sum(a * (b - a) for a, b in zip(v, w))


def cartan_matrix(q: Quiver) -> List[List[int]]:
    """Integer Cartan matrix C_ij = 2 delta_ij - b_ij."""
    q.require_loop_free()
    adj = q.adjacency()
    return [[2 if i == j else -adj[i][j] for j in range(q.n)] for i in range(q.n)]
