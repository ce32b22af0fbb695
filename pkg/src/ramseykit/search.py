"""Constructive monochromatic-structure searches on concrete colorings.

These procedures are algorithmic extractions of inductive existence
arguments whose guarantees only kick in at astronomically large n.  At
desk scale the contract is soundness plus traceability: every Found
outcome is re-verified against the coloring before being returned, and
failure to find anything is a first-class Exhausted result carrying the
trace of what was attempted, never an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from . import oracle
from .embedder import embed_greedy, find_sparse_pair_heuristic
from .graphs import (
    BLUE,
    RED,
    Coloring,
    Embedding,
    Graph,
    bits_of,
    mask_of,
    opposite,
)
from .randomlab import judicious_partition


@dataclass(frozen=True)
class SearchConfig:
    rho: float
    sigma: float = 0.05
    base_s: int = 8                # exhaustive clique search at or below this size
    base_n: int = 16               # exact subgraph search at or below this many vertices
    subset_budget: int = 10 ** 7   # C(|U|, s) cap for exact enumeration modes
    max_depth: int = 8
    heuristic_tries: int = 40
    partition_tries: int = 64
    l_fraction: Optional[float] = None  # None: 1/2; random-bounded mode overrides
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        if self.l_fraction is not None and not 0 < self.l_fraction <= 1:
            raise ValueError("l_fraction must lie in (0, 1]")


@dataclass(frozen=True)
class ChaseState:
    """Record of a neighborhood chase: nested sets, pivots, letter string."""

    pivots: tuple[tuple[int, str], ...]
    sets: tuple[frozenset[int], ...]   # U_1, U_2, ... (post-step sets)
    string: str
    start: frozenset[int]
    red_threshold: float

    def pivots_of(self, color: str) -> list[int]:
        return [v for v, c in self.pivots if c == color]

    @property
    def final_set(self) -> frozenset[int]:
        return self.sets[-1] if self.sets else self.start

    def check_invariants(self, coloring: Coloring) -> bool:
        """Structural sanity of the trace alone: nesting, pivot adjacency, thresholds."""
        current = self.start
        for (pivot, letter), after in zip(self.pivots, self.sets):
            if pivot not in current:
                return False
            rest = current - {pivot}
            red_nb = {v for v in rest if coloring.color_of(pivot, v) == RED}
            expect_red = len(red_nb) >= self.red_threshold * len(rest)
            if (letter == RED) != expect_red:
                return False
            want = red_nb if letter == RED else rest - red_nb
            if after != want:
                return False
            current = after
        return True


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a search: a verified find, or an exhaustion trace."""

    kind: str  # found_red_h | found_blue_clique | found_mono | exhausted
    embedding: Optional[Embedding] = None
    clique: Optional[tuple[int, ...]] = None
    color: Optional[str] = None
    trace: tuple = ()
    reason: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.kind != "exhausted"

    def to_json(self) -> dict:
        out = {"outcome": self.kind}
        if self.embedding is not None:
            out["embedding"] = list(self.embedding.image)
        if self.clique is not None:
            out["clique"] = list(self.clique)
        if self.color is not None:
            out["color"] = self.color
        if self.reason is not None:
            out["reason"] = self.reason
        out["trace"] = [dict(ev) for ev in self.trace]
        return out


def neighborhood_chase(coloring: Coloring, start_set: Sequence[int],
                       red_threshold: float, stop_R: int, stop_B: int) -> ChaseState:
    """Iterated pivoting into majority-color neighborhoods.

    Pivot = lowest-index vertex of the current set; the step restricts to
    the pivot's red neighborhood when it holds at least red_threshold of
    the non-pivot vertices, else to the blue neighborhood.  Stops when
    either letter count hits its cap or the set empties.
    """
    if not start_set:
        raise ValueError("start_set must be nonempty")
    if stop_R < 1 or stop_B < 1:
        raise ValueError("stop counts must be >= 1")
    current = frozenset(start_set)
    pivots: list[tuple[int, str]] = []
    sets: list[frozenset[int]] = []
    letters: list[str] = []
    while current and letters.count(RED) < stop_R and letters.count(BLUE) < stop_B:
        pivot = min(current)
        rest = current - {pivot}
        red_nb = frozenset(v for v in rest if coloring.red_rows[pivot] >> v & 1)
        if len(red_nb) >= red_threshold * len(rest):
            letter, nxt = RED, red_nb
        else:
            letter, nxt = BLUE, rest - red_nb
        pivots.append((pivot, letter))
        letters.append(letter)
        sets.append(nxt)
        current = nxt
    return ChaseState(tuple(pivots), tuple(sets), "".join(letters),
                      frozenset(start_set), red_threshold)


def filter_high_blue_degree(coloring: Coloring, A: Sequence[int], B: Sequence[int],
                            rho: float) -> list[int]:
    """A' = vertices of A with blue degree >= (1-2 rho)|B| into B."""
    aset, bset = set(A), set(B)
    if not aset or not bset:
        raise ValueError("A and B must be nonempty")
    if aset & bset:
        raise ValueError("A and B must be disjoint")
    bmask = mask_of(bset)
    need = (1 - 2 * rho) * len(bset)
    return sorted(v for v in aset
                  if (coloring.row(v, BLUE) & bmask).bit_count() >= need)


def common_neighborhood_pigeonhole(coloring: Coloring, S: Sequence[int], B: Sequence[int],
                                   l: int, color: str, mode: str = "exact",
                                   budget: int = 10 ** 7) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Star-counting step: an l-subset T of S with a large common neighborhood in B.

    exact: the T maximizing |B'| over all l-subsets (ties lexicographic).
    greedy: repeatedly drop the S-vertex whose removal keeps the most
    common neighbors.  B' = members of B joined in ``color`` to all of T.
    """
    S = sorted(set(S))
    B = sorted(set(B))
    if l > len(S):
        raise ValueError(f"l={l} exceeds |S|={len(S)}")
    if l < 0:
        raise ValueError("l must be nonnegative")
    rows = [coloring.row(v, color) for v in range(coloring.n)]

    def common(ts: Sequence[int]) -> list[int]:
        mask = mask_of(B)
        for v in ts:
            mask &= rows[v]
        return sorted(bits_of(mask))

    if mode == "exact":
        if math.comb(len(S), l) > budget:
            raise ValueError(
                f"exact mode needs C({len(S)},{l}) <= budget {budget}"
            )
        best_T, best_B = None, []
        for T in combinations(S, l):
            b = common(T)
            if best_T is None or len(b) > len(best_B):
                best_T, best_B = T, b
        return tuple(best_T or ()), tuple(best_B)
    if mode == "greedy":
        T = list(S)
        while len(T) > l:
            best_i, best_b = 0, -1
            for i in range(len(T)):
                b = len(common(T[:i] + T[i + 1:]))
                if b > best_b:
                    best_i, best_b = i, b
            T.pop(best_i)
        return tuple(T), tuple(common(T))
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class SplitResult:
    subgraph: Graph              # induced on the kept vertices, relabelled
    removed: frozenset[int]      # original vertex ids with degree > cap
    kept: tuple[int, ...]        # kept[i] = original id of subgraph vertex i


def split_high_degree(g: Graph, degree_cap: float) -> SplitResult:
    """Strip vertices of degree > cap; isolated survivors are retained."""
    if degree_cap <= 0:
        raise ValueError("degree_cap must be positive")
    removed = frozenset(v for v in range(g.t) if g.degree(v) > degree_cap)
    kept = tuple(v for v in range(g.t) if v not in removed)
    return SplitResult(g.induced(kept), removed, kept)


def _induced_coloring(coloring: Coloring, vertices: Sequence[int]) -> tuple[Coloring, list[int]]:
    verts = sorted(vertices)
    idx = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v, i in idx.items():
        for u in bits_of(coloring.red_rows[v]):
            if u in idx:
                rows[i] |= 1 << idx[u]
    return Coloring(len(verts), tuple(rows)), verts


def _verify_clique(coloring: Coloring, vertices: Sequence[int], color: str) -> bool:
    vs = list(vertices)
    return all(coloring.color_of(u, v) == color
               for i, u in enumerate(vs) for v in vs[i + 1:])


def _embed_into_clique(pattern: Graph, clique: Sequence[int]) -> Embedding:
    return Embedding(pattern, tuple(sorted(clique)[: pattern.t]))


def _find_pattern_in_color(coloring: Coloring, pattern: Graph, color: str,
                           within: Sequence[int], config: SearchConfig,
                           events: list) -> Optional[Embedding]:
    """Red-side attempt restricted to ``within``: exact at small scale, greedy above."""
    sub, verts = _induced_coloring(coloring, within)
    if pattern.t > sub.n:
        return None
    if sub.n <= config.base_n:
        emb = oracle.find_mono_subgraph_exact(sub, pattern, color)
        events.append({"event": "exact_pattern_search", "color": color,
                       "n": sub.n, "found": emb is not None})
        if emb is None:
            return None
        return Embedding(pattern, tuple(verts[w] for w in emb.image))
    if sub.n < pattern.max_degree + 1:
        return None
    res = embed_greedy(pattern, sub, delta=config.rho, color=color)
    events.append({"event": "greedy_embed", "color": color, "n": sub.n,
                   "ok": res.ok, "hypothesis_held": res.hypothesis_held})
    if not res.ok:
        return None
    return Embedding(pattern, tuple(verts[w] for w in res.embedding.image))


def find_red_H_or_blue_clique(coloring: Coloring, pattern: Graph, s: int,
                              config: SearchConfig,
                              within: Optional[Sequence[int]] = None) -> SearchOutcome:
    """Hunt a red copy of ``pattern`` or a blue K_s, by sparse-pair descent.

    Opportunistic version of the red/blue induction: try a red embedding;
    failing that, find a sparse red pair, pass to the high-blue-degree
    filter, recurse for a 2s/3 blue clique, then lift it to size s through
    the common-neighborhood (star-count) step.  Small subproblems fall
    through to complete exhaustive searches.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if not pattern.isolated_free and pattern.m > 0:
        pass  # isolated vertices are tolerated: they embed anywhere unused
    events: list[dict] = []
    universe = sorted(within) if within is not None else list(range(coloring.n))

    outcome = _rb_search(coloring, pattern, s, config, universe, 0, events)
    if outcome.found:
        _assert_outcome_valid(coloring, pattern, outcome)
    return outcome


def _rb_search(coloring: Coloring, pattern: Graph, s: int, config: SearchConfig,
               universe: list[int], depth: int, events: list) -> SearchOutcome:
    events.append({"event": "enter", "depth": depth, "s": s, "size": len(universe)})
    if depth > config.max_depth:
        return SearchOutcome("exhausted", trace=tuple(events), reason="depth budget")
    if not universe:
        return SearchOutcome("exhausted", trace=tuple(events), reason="empty set")

    # (1) red pattern attempt.
    emb = _find_pattern_in_color(coloring, pattern, RED, universe, config, events)
    if emb is not None:
        return SearchOutcome("found_red_h", embedding=emb, color=RED, trace=tuple(events))

    # Base case / feasible exhaustive blue-clique search.
    if s <= config.base_s or math.comb(len(universe), min(s, len(universe))) <= config.subset_budget:
        clique = oracle.find_clique_exact(coloring, s, BLUE, within=universe)
        events.append({"event": "exhaustive_clique", "s": s,
                       "found": clique is not None})
        if clique is not None:
            return SearchOutcome("found_blue_clique", clique=tuple(clique),
                                 color=BLUE, trace=tuple(events))
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="exhaustive clique search empty")

    # (2) sparse red pair, then the blue-degree filter.
    sub, verts = _induced_coloring(coloring, universe)
    witness = find_sparse_pair_heuristic(sub, config.sigma, config.rho, RED,
                                         tries=config.heuristic_tries,
                                         seed=config.seed + depth)
    events.append({"event": "sparse_pair", "found": witness is not None})
    if witness is None:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="no sparse red pair found")
    A = [verts[v] for v in witness.X]
    B = [verts[v] for v in witness.Y]
    A_prime = filter_high_blue_degree(coloring, A, B, config.rho)
    events.append({"event": "blue_degree_filter", "A": len(A), "A_prime": len(A_prime)})
    if not A_prime:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="blue-degree filter emptied A")

    # (3) recurse for a 2s/3 blue clique inside A'.
    s2 = math.ceil(2 * s / 3)
    if s2 >= s:
        s2 = s - 1
    if s2 < 1:
        return SearchOutcome("exhausted", trace=tuple(events), reason="clique target degenerate")
    sub_out = _rb_search(coloring, pattern, s2, config, A_prime, depth + 1, events)
    if sub_out.kind == "found_red_h":
        return sub_out
    if sub_out.kind != "found_blue_clique":
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason=f"recursion exhausted: {sub_out.reason}")
    S = list(sub_out.clique)

    # (4) star-count step: lift through the common blue neighborhood.
    frac = config.l_fraction if config.l_fraction is not None else 0.5
    l = min(len(S), max(1, math.ceil(frac * s)))
    mode = "exact" if math.comb(len(S), l) <= config.subset_budget else "greedy"
    T, B_prime = common_neighborhood_pigeonhole(coloring, S, B, l, BLUE, mode=mode)
    events.append({"event": "pigeonhole", "l": l, "mode": mode, "B_prime": len(B_prime)})
    if len(B_prime) == 0:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="empty common neighborhood")
    rest = s - l
    if rest == 0:
        return SearchOutcome("found_blue_clique", clique=tuple(sorted(T)),
                             color=BLUE, trace=tuple(events))
    tail = _rb_search(coloring, pattern, rest, config, list(B_prime), depth + 1, events)
    if tail.kind == "found_red_h":
        return tail
    if tail.kind == "found_blue_clique":
        clique = tuple(sorted(set(T) | set(tail.clique)))
        if len(clique) >= s and _verify_clique(coloring, clique[:s], BLUE):
            return SearchOutcome("found_blue_clique", clique=clique[:s],
                                 color=BLUE, trace=tuple(events))
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="assembled clique failed verification")
    return SearchOutcome("exhausted", trace=tuple(events),
                         reason=f"tail recursion exhausted: {tail.reason}")


def _assert_outcome_valid(coloring: Coloring, pattern: Graph, outcome: SearchOutcome):
    if outcome.kind in ("found_red_h", "found_mono"):
        ok, violation = oracle.verify_embedding(outcome.embedding.pattern, coloring,
                                                outcome.embedding, outcome.color)
        if not ok:
            raise AssertionError(f"unsound search outcome: {violation}")
    elif outcome.kind == "found_blue_clique":
        if not _verify_clique(coloring, outcome.clique, BLUE):
            raise AssertionError("unsound clique outcome")


def find_mono_H(coloring: Coloring, pattern: Graph, config: SearchConfig) -> SearchOutcome:
    """Search for a monochromatic copy of ``pattern`` in either color.

    Pipeline: strip high-degree pattern vertices, run a majority-color
    neighborhood chase to build a pivot clique joined to a surviving set,
    search that set for the stripped pattern in the pivot color (or a
    clique in the other color), and reattach the stripped vertices onto
    the pivot clique.  Tiny colorings short-circuit to the exact oracle.
    """
    events: list[dict] = []
    t = pattern.t
    n = coloring.n

    if n <= config.base_n:
        return _exact_mono(coloring, pattern, events)

    rho = float(pattern.density) if pattern.t >= 2 else 1.0
    if rho <= 0:
        return SearchOutcome("exhausted", trace=tuple(events), reason="empty pattern density")
    log_ratio = 1 - math.log2(rho)
    cap = t * math.sqrt(rho) / log_ratio
    split = split_high_degree(pattern, cap)
    events.append({"event": "degree_split", "cap": cap,
                   "removed": sorted(split.removed)})

    stop = max(1, math.ceil(math.sqrt(rho) * log_ratio * t))
    chase = neighborhood_chase(coloring, range(n), 0.5, stop, stop)
    events.append({"event": "chase", "string": chase.string,
                   "final_size": len(chase.final_set)})

    stop_letter = None
    if chase.string.count(RED) >= stop:
        stop_letter = RED
    elif chase.string.count(BLUE) >= stop:
        stop_letter = BLUE
    color_order = [c for c in (stop_letter, RED, BLUE) if c is not None]
    seen: set[str] = set()

    for c in color_order:
        if c in seen:
            continue
        seen.add(c)
        out = _mono_via_pivots(coloring, pattern, split, chase, c, config, events)
        if out is not None:
            _assert_outcome_valid(coloring, pattern, out)
            return out
    return SearchOutcome("exhausted", trace=tuple(events),
                         reason="chase pivots insufficient in both colors")


def _exact_mono(coloring: Coloring, pattern: Graph, events: list) -> SearchOutcome:
    for c in (RED, BLUE):
        emb = oracle.find_mono_subgraph_exact(coloring, pattern, c)
        if emb is not None:
            events.append({"event": "exact_mono", "color": c, "found": True})
            return SearchOutcome("found_mono", embedding=emb, color=c,
                                 trace=tuple(events))
    events.append({"event": "exact_mono", "found": False})
    return SearchOutcome("exhausted", trace=tuple(events),
                         reason="exact search: no monochromatic copy exists")


def _mono_via_pivots(coloring: Coloring, pattern: Graph, split: SplitResult,
                     chase: ChaseState, c: str, config: SearchConfig,
                     events: list) -> Optional[SearchOutcome]:
    t = pattern.t
    pivots = chase.pivots_of(c)
    events.append({"event": "pivot_attempt", "color": c, "pivots": len(pivots)})
    if len(pivots) >= t:
        emb = _embed_into_clique(pattern, pivots)
        return SearchOutcome("found_mono", embedding=emb, color=c, trace=tuple(events))
    final = sorted(chase.final_set)
    if len(pivots) < len(split.removed) or len(final) < max(split.subgraph.t, 1):
        return None
    view = coloring if c == RED else coloring.swapped()
    sub_out = _rb_search(view, split.subgraph, t, config, final, 0, events)
    if sub_out.kind == "found_blue_clique":
        # K_t in the opposite color contains the whole pattern.
        emb = _embed_into_clique(pattern, sub_out.clique)
        return SearchOutcome("found_mono", embedding=emb, color=opposite(c),
                             trace=tuple(events))
    if sub_out.kind == "found_red_h":
        image = [-1] * t
        for i, orig in enumerate(split.kept):
            image[orig] = sub_out.embedding.image[i]
        for orig, pv in zip(sorted(split.removed), pivots):
            image[orig] = pv
        emb = Embedding(pattern, tuple(image))
        return SearchOutcome("found_mono", embedding=emb, color=c, trace=tuple(events))
    return None


def find_random_graph_mono(coloring: Coloring, pattern: Graph,
                           witness, config: SearchConfig) -> SearchOutcome:
    """Monochromatic search for degree-bounded patterns with an exceptional set.

    Double neighborhood chase (red then blue) builds two pivot cliques that
    will absorb the exceptional vertices; the surviving set is searched by
    a two-sided recursion that alternates greedy red embedding, sparse-pair
    extraction, judicious bisection of the blue-side target, and the
    star-count lift.  Sound and traceable, not complete.
    """
    from .graphs import BoundedGraphWitness

    if not isinstance(witness, BoundedGraphWitness):
        raise ValueError("a BoundedGraphWitness for the pattern is required")
    if witness.graph.rows != pattern.rows:
        raise ValueError("witness does not describe the given pattern")
    events: list[dict] = []
    t = pattern.t
    n = coloring.n
    if n <= config.base_n:
        return _exact_mono(coloring, pattern, events)

    exceptional = sorted(witness.exceptional)
    q = len(exceptional)
    kept = tuple(v for v in range(t) if v not in witness.exceptional)
    core = pattern.induced(kept) if kept else None
    rho = config.rho

    stop_pivots = max(q, math.ceil(math.sqrt(t)), 1)
    chase_red = neighborhood_chase(coloring, range(n), rho, stop_pivots, max(t - 1, 1))
    events.append({"event": "chase_red", "string": chase_red.string,
                   "final_size": len(chase_red.final_set)})
    if chase_red.string.count(BLUE) >= t - 1 and chase_red.final_set:
        clique = chase_red.pivots_of(BLUE) + [min(chase_red.final_set)]
        emb = _embed_into_clique(pattern, clique)
        out = SearchOutcome("found_mono", embedding=emb, color=BLUE, trace=tuple(events))
        _assert_outcome_valid(coloring, pattern, out)
        return out
    red_pivots = chase_red.pivots_of(RED)
    if len(red_pivots) >= t:
        emb = _embed_into_clique(pattern, red_pivots)
        out = SearchOutcome("found_mono", embedding=emb, color=RED, trace=tuple(events))
        _assert_outcome_valid(coloring, pattern, out)
        return out
    if len(red_pivots) < stop_pivots or not chase_red.final_set:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="red chase emptied before pivot quota")

    swapped = coloring.swapped()
    chase_blue = neighborhood_chase(swapped, sorted(chase_red.final_set), rho,
                                    stop_pivots, max(t - 1, 1))
    events.append({"event": "chase_blue", "string": chase_blue.string,
                   "final_size": len(chase_blue.final_set)})
    if chase_blue.string.count(BLUE) >= t - 1 and chase_blue.final_set:
        clique = chase_blue.pivots_of(BLUE) + [min(chase_blue.final_set)]
        emb = _embed_into_clique(pattern, clique)
        out = SearchOutcome("found_mono", embedding=emb, color=RED, trace=tuple(events))
        _assert_outcome_valid(coloring, pattern, out)
        return out
    blue_pivots = chase_blue.pivots_of(RED)  # red in the swapped view = blue here
    if len(blue_pivots) >= t:
        emb = _embed_into_clique(pattern, blue_pivots)
        out = SearchOutcome("found_mono", embedding=emb, color=BLUE, trace=tuple(events))
        _assert_outcome_valid(coloring, pattern, out)
        return out
    if len(blue_pivots) < stop_pivots or not chase_blue.final_set:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="blue chase emptied before pivot quota")

    if core is None:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="all vertices exceptional and no K_t pivot clique")

    W = sorted(chase_blue.final_set)
    found = _two_sided(coloring, W, core, core, config, 0, events)
    if found is None:
        return SearchOutcome("exhausted", trace=tuple(events),
                             reason="two-sided recursion exhausted")
    color, core_emb = found
    anchors = red_pivots if color == RED else blue_pivots
    image = [-1] * t
    for i, orig in enumerate(kept):
        image[orig] = core_emb.image[i]
    for orig, pv in zip(exceptional, anchors):
        image[orig] = pv
    emb = Embedding(pattern, tuple(image))
    out = SearchOutcome("found_mono", embedding=emb, color=color, trace=tuple(events))
    _assert_outcome_valid(coloring, pattern, out)
    return out


def _two_sided(coloring: Coloring, W: list[int], blue_target: Graph, red_target: Graph,
               config: SearchConfig, depth: int,
               events: list) -> Optional[tuple[str, Embedding]]:
    """Find a blue copy of blue_target or a red copy of red_target within W.

    Returns (color, embedding-in-global-vertices) or None.  The blue
    target shrinks through bisection; the red target is fixed.
    """
    events.append({"event": "two_sided", "depth": depth, "size": len(W),
                   "blue_t": blue_target.t, "red_t": red_target.t})
    if depth > config.max_depth or len(W) < 1:
        return None
    sub, verts = _induced_coloring(coloring, W)

    if sub.n <= config.base_n:
        for color, target in ((RED, red_target), (BLUE, blue_target)):
            if target.t <= sub.n:
                emb = oracle.find_mono_subgraph_exact(sub, target, color)
                if emb is not None:
                    return color, Embedding(target, tuple(verts[w] for w in emb.image))
        return None

    # Red embedding attempt on the current window.
    if red_target.t <= sub.n and sub.n >= red_target.max_degree + 1:
        res = embed_greedy(red_target, sub, delta=config.rho, color=RED)
        events.append({"event": "rb_embed_red", "ok": res.ok})
        if res.ok:
            return RED, Embedding(red_target, tuple(verts[w] for w in res.embedding.image))

    witness = find_sparse_pair_heuristic(sub, config.sigma, config.rho, RED,
                                         tries=config.heuristic_tries,
                                         seed=config.seed + 17 * depth)
    events.append({"event": "rb_sparse_pair", "found": witness is not None})
    if witness is None:
        return None
    A = [verts[v] for v in witness.X]
    B = [verts[v] for v in witness.Y]
    A_prime = filter_high_blue_degree(coloring, A, B, config.rho)
    if not A_prime:
        return None

    if blue_target.t <= 2:
        half = blue_target  # nothing to bisect
        v1 = list(range(blue_target.t))
    else:
        cert = judicious_partition(blue_target, config.partition_tries,
                                   seed=config.seed + depth)
        v1 = sorted(cert.v1) if len(cert.v1) <= len(cert.v2) else sorted(cert.v2)
        if not v1 or len(v1) == blue_target.t:
            v1 = list(range(blue_target.t // 2))
        half = blue_target.induced(v1)
    events.append({"event": "rb_bisect", "v1": len(v1)})

    sub_found = _two_sided(coloring, A_prime, half, red_target, config, depth + 1, events)
    if sub_found is None:
        return None
    if sub_found[0] == RED:
        return sub_found
    half_emb = sub_found[1]
    S = list(half_emb.image)

    log_ratio = 1 - math.log2(config.rho)
    frac = config.l_fraction if config.l_fraction is not None else \
        1 - math.log2(15 / 14) / (2 * log_ratio)
    l = min(len(S), max(1, math.ceil(frac * len(S))))
    T, B_prime = common_neighborhood_pigeonhole(coloring, S, B, l, BLUE, mode="greedy")
    events.append({"event": "rb_pigeonhole", "l": l, "B_prime": len(B_prime)})
    if not B_prime:
        return None

    tset = set(T)
    k_verts = [v1[i] for i in range(half.t) if half_emb.image[i] in tset]
    rest_verts = [v for v in range(blue_target.t) if v not in set(k_verts)]
    image = [-1] * blue_target.t
    pos_in_half = {v: i for i, v in enumerate(v1)}
    if rest_verts:
        remainder = blue_target.induced(rest_verts)
        if remainder.t >= blue_target.t:
            return None  # no progress possible
        tail = _two_sided(coloring, list(B_prime), remainder, red_target,
                          config, depth + 1, events)
        if tail is None:
            return None
        if tail[0] == RED:
            return tail
        rem_emb = tail[1]
        for i, v in enumerate(rest_verts):
            image[v] = rem_emb.image[i]
    for v in k_verts:
        image[v] = half_emb.image[pos_in_half[v]]
    emb = Embedding(blue_target, tuple(image))
    ok, violation = oracle.verify_embedding(blue_target, coloring, emb, BLUE)
    if not ok:
        events.append({"event": "rb_assembly_failed", "violation": violation})
        return None
    return BLUE, emb
