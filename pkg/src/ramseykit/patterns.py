"""Built-in pattern shorthands so experiments need no file staging.

  k<n>               complete graph K_n
  p<n>               path on n vertices
  c<n>               cycle on n vertices
  s<n>               star K_{1,n}
  m<n>               matching of n disjoint edges
  e<n>               edgeless graph on n vertices
  gnp:<t>:<rho>:<seed>   seeded binomial random graph

Anything that is not a shorthand is treated as a path to a graph file.
"""

from __future__ import annotations

import re
from pathlib import Path

from .graphs import Graph, parse_graph

_SHORTHAND = re.compile(r"^([kpcsme])(\d+)$")
_GNP = re.compile(r"^gnp:(\d+):([0-9./]+):(\d+)$")


def named_graph(kind: str, n: int) -> Graph:
    if n < 1:
        raise ValueError("size must be positive")
    if kind == "k":
        return Graph.complete(n)
    if kind == "e":
        return Graph.empty(n)
    if kind == "p":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "c":
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "s":
        return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])
    if kind == "m":
        return Graph.from_edges(2 * n, [(2 * i, 2 * i + 1) for i in range(n)])
    raise ValueError(f"unknown pattern kind {kind!r}")


def parse_rho(text: str) -> float:
    from fractions import Fraction

    if "/" in text:
        return float(Fraction(text))
    return float(text)


def load_pattern(spec: str) -> Graph:
    """Resolve a shorthand, gnp spec, or file path to a Graph."""
    m = _SHORTHAND.match(spec)
    if m:
        return named_graph(m.group(1), int(m.group(2)))
    m = _GNP.match(spec)
    if m:
        from .randomlab import sample_gnp

        return sample_gnp(int(m.group(1)), parse_rho(m.group(2)), int(m.group(3)))
    path = Path(spec)
    if not path.exists():
        raise FileNotFoundError(
            f"{spec!r} is neither a pattern shorthand (k3, p4, c5, s4, m2, e3, "
            f"gnp:t:rho:seed) nor an existing file"
        )
    return parse_graph(path.read_text())
