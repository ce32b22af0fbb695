"""Core graph and coloring types.

Undirected simple graphs on dense 0-indexed vertices, adjacency stored as
packed bit rows (one Python int per vertex).  Two-colorings of complete
graphs store the Red class as bit rows; Blue is the complement.  All types
are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

RED = "R"
BLUE = "B"


class GraphFormatError(ValueError):
    """Malformed graph/coloring text; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set-bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def opposite(color: str) -> str:
    if color == RED:
        return BLUE
    if color == BLUE:
        return RED
    raise ValueError(f"unknown color {color!r}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: ``rows[v]`` has bit u set iff {u,v} is an edge."""

    t: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.rows) != self.t:
            raise ValueError("row count does not match vertex count")
        full = (1 << self.t) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has out-of-range bits")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(self.t):
            for u in bits_of(self.rows[v]):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u},{v}}}")

    @classmethod
    def from_edges(cls, t: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * t
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop {u}")
            if not (0 <= u < t and 0 <= v < t):
                raise ValueError(f"edge ({u},{v}) out of range for t={t}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(t, tuple(rows))

    @classmethod
    def complete(cls, t: int) -> "Graph":
        full = (1 << t) - 1
        return cls(t, tuple(full ^ (1 << v) for v in range(t)))

    @classmethod
    def empty(cls, t: int) -> "Graph":
        return cls(t, (0,) * t)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits_of(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.t):
            row = self.rows[u] >> (u + 1) << (u + 1)
            for v in bits_of(row):
                out.append((u, v))
        return out

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @property
    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    @property
    def density(self) -> Fraction:
        """Exact edge density m / C(t,2); requires t >= 2."""
        if self.t < 2:
            raise ValueError("density undefined for t < 2")
        return Fraction(self.m, self.t * (self.t - 1) // 2)

    @property
    def isolated_free(self) -> bool:
        return all(r for r in self.rows)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled to 0..k-1 in the order given."""
        idx = {v: i for i, v in enumerate(vertices)}
        rows = [0] * len(vertices)
        for v, i in idx.items():
            for u in bits_of(self.rows[v]):
                if u in idx:
                    rows[i] |= 1 << idx[u]
        return Graph(len(vertices), tuple(rows))


def graph_stats(g: Graph) -> dict:
    """Summary statistics; density is an exact rational (t >= 2 required)."""
    if g.t < 2:
        raise ValueError("graph_stats requires t >= 2")
    return {
        "t": g.t,
        "m": g.m,
        "rho": g.density,
        "max_degree": g.max_degree,
        "isolated_free": g.isolated_free,
    }


@dataclass(frozen=True)
class Coloring:
    """Total Red/Blue coloring of E(K_n); ``red_rows`` is the red adjacency."""

    n: int
    red_rows: tuple[int, ...]

    def __post_init__(self):
        Graph(self.n, self.red_rows)  # validates shape/symmetry/no-loops

    @classmethod
    def from_red_graph(cls, g: Graph) -> "Coloring":
        return cls(g.t, g.rows)

    @classmethod
    def monochromatic(cls, n: int, color: str) -> "Coloring":
        if color == RED:
            return cls.from_red_graph(Graph.complete(n))
        return cls(n, (0,) * n)

    def row(self, v: int, color: str) -> int:
        if color == RED:
            return self.red_rows[v]
        full = (1 << self.n) - 1
        return full & ~self.red_rows[v] & ~(1 << v)

    def color_of(self, u: int, v: int) -> str:
        if u == v:
            raise ValueError("no self-pairs in a coloring")
        return RED if self.red_rows[u] >> v & 1 else BLUE

    def class_graph(self, color: str) -> Graph:
        return Graph(self.n, tuple(self.row(v, color) for v in range(self.n)))

    def swapped(self) -> "Coloring":
        """The coloring with Red and Blue exchanged."""
        return Coloring.from_red_graph(self.class_graph(BLUE))


@dataclass(frozen=True)
class Embedding:
    """Injective adjacency-preserving map from a pattern into a host."""

    pattern: Graph
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.pattern.t:
            raise ValueError("image must map every pattern vertex")
        if len(set(self.image)) != len(self.image):
            raise ValueError("image not injective")

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.image))


@dataclass(frozen=True)
class BoundedGraphWitness:
    """Witness that every vertex outside ``exceptional`` has degree <= cap."""

    graph: Graph
    degree_cap: int
    exceptional: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        for v in range(self.graph.t):
            if v not in self.exceptional and self.graph.degree(v) > self.degree_cap:
                raise ValueError(
                    f"vertex {v} has degree {self.graph.degree(v)} > cap "
                    f"{self.degree_cap} but is not exceptional"
                )


def density_pair(host, X: Iterable[int], Y: Iterable[int], color: Optional[str] = None) -> Fraction:
    """Edge density e(X,Y)/(|X||Y|) between disjoint nonempty vertex sets.

    ``host`` is a Graph, or a Coloring together with ``color`` naming the
    class whose edges are counted.
    """
    xs, ys = sorted(set(X)), sorted(set(Y))
    if not xs or not ys:
        raise ValueError("density_pair requires nonempty sets")
    if set(xs) & set(ys):
        raise ValueError("density_pair requires disjoint sets")
    if isinstance(host, Coloring):
        if color is None:
            raise ValueError("a color is required when the host is a Coloring")
        rows = [host.row(v, color) for v in range(host.n)]
    else:
        rows = list(host.rows)
    ymask = mask_of(ys)
    e = sum((rows[x] & ymask).bit_count() for x in xs)
    return Fraction(e, len(xs) * len(ys))


# ---------------------------------------------------------------------------
# Text formats.
#
# Graph:    header "t <t> m <m>", then m lines "<u> <v>" with 0 <= u < v < t.
# Coloring: header "n <n>", then C(n,2) lines "<u> <v> <R|B>" in lexicographic
#           pair order; compact variant "n <n> hex <string>" packs the
#           upper-triangle bits (1 = Red, lexicographic pair order, first pair
#           in the most significant bit) into hex.
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise GraphFormatError("empty input", 1)
    head = lines[0].split()
    if len(head) != 4 or head[0] != "t" or head[2] != "m":
        raise GraphFormatError("expected header 't <t> m <m>'", 1)
    try:
        t, m = int(head[1]), int(head[3])
    except ValueError:
        raise GraphFormatError("non-integer header fields", 1) from None
    if t < 1 or m < 0:
        raise GraphFormatError("t must be >= 1 and m >= 0", 1)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}", 1)
    rows = [0] * t
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError("expected '<u> <v>'", i)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("non-integer endpoint", i) from None
        if not (0 <= u < v < t):
            if u == v:
                raise GraphFormatError(f"self-loop {u}", i)
            raise GraphFormatError(f"edge ({u},{v}) violates 0 <= u < v < t", i)
        if rows[u] >> v & 1:
            raise GraphFormatError(f"duplicate edge ({u},{v})", i)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(t, tuple(rows))


def serialize_graph(g: Graph) -> str:
    lines = [f"t {g.t} m {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def pair_order(n: int) -> list[tuple[int, int]]:
    """Lexicographic order of the unordered pairs of 0..n-1."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def parse_coloring(text: str) -> Coloring:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise GraphFormatError("empty input", 1)
    head = lines[0].split()
    if len(head) == 4 and head[0] == "n" and head[2] == "hex":
        try:
            n = int(head[1])
        except ValueError:
            raise GraphFormatError("non-integer vertex count", 1) from None
        return _coloring_from_hex(n, head[3])
    if len(head) != 2 or head[0] != "n":
        raise GraphFormatError("expected header 'n <n>' or 'n <n> hex <string>'", 1)
    try:
        n = int(head[1])
    except ValueError:
        raise GraphFormatError("non-integer vertex count", 1) from None
    pairs = pair_order(n)
    if len(lines) - 1 != len(pairs):
        raise GraphFormatError(
            f"expected {len(pairs)} pair lines, found {len(lines) - 1}", 1
        )
    rows = [0] * n
    for i, (ln, (pu, pv)) in enumerate(zip(lines[1:], pairs), start=2):
        parts = ln.split()
        if len(parts) != 3 or parts[2] not in (RED, BLUE):
            raise GraphFormatError("expected '<u> <v> <R|B>'", i)
        u, v = int(parts[0]), int(parts[1])
        if (u, v) != (pu, pv):
            raise GraphFormatError(
                f"pair ({u},{v}) out of order; expected ({pu},{pv})", i
            )
        if parts[2] == RED:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Coloring(n, tuple(rows))


def _coloring_from_hex(n: int, hexstr: str) -> Coloring:
    pairs = pair_order(n)
    nbits = len(pairs)
    width = max(1, (nbits + 3) // 4)
    if len(hexstr) != width:
        raise GraphFormatError(f"hex string must have {width} digits", 1)
    try:
        value = int(hexstr, 16)
    except ValueError:
        raise GraphFormatError("invalid hex string", 1) from None
    total = 4 * width
    if value >> total:
        raise GraphFormatError("hex string too wide", 1)
    if nbits and value & ((1 << (total - nbits)) - 1):
        raise GraphFormatError("padding bits must be zero", 1)
    rows = [0] * n
    for i, (u, v) in enumerate(pairs):
        if value >> (total - 1 - i) & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Coloring(n, tuple(rows))


def serialize_coloring(c: Coloring, compact: bool = False) -> str:
    pairs = pair_order(c.n)
    if compact:
        value = 0
        for u, v in pairs:
            value = value << 1 | (c.red_rows[u] >> v & 1)
        nbits = len(pairs)
        width = max(1, (nbits + 3) // 4)
        value <<= 4 * width - nbits
        return f"n {c.n} hex {value:0{width}x}\n"
    lines = [f"n {c.n}"]
    lines.extend(f"{u} {v} {c.color_of(u, v)}" for u, v in pairs)
    return "\n".join(lines) + "\n"
