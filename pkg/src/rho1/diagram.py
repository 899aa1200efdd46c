"""Knot-diagram data model and front end.

An upright diagram is a long-knot diagram where both strands at every
crossing point upward: the data is an increasing list of edge labels, a
list of signed crossings (s, i, j) naming the incoming over- and
under-strand edges, and per-edge rotation numbers.  Labels need not be
consecutive; the successor function is "next label in the list".

The front end parses planar-diagram (PD) text and Dowker-Thistlethwaite
(DT) codes and converts them to upright form with a left-to-right sweep
that tracks rotation numbers.  Converted diagrams are self-checked: the
normalized Alexander polynomial they induce must satisfy its defining
symmetries, and any failure raises instead of being silently accepted.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class DiagramError(ValueError):
    """Malformed diagram data."""


class PDParseError(DiagramError):
    """PD text that cannot be parsed or validated."""


class DTError(DiagramError):
    """DT code that cannot be parsed or realized."""


class ConversionError(DiagramError):
    """PD-to-upright conversion failed an internal consistency check."""


@dataclass(frozen=True, order=True)
class Crossing:
    """One crossing: sign, incoming over-strand edge, incoming under-strand edge."""

    s: int
    i: int
    j: int

    def __post_init__(self):
        if self.s not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.s}")


class UprightDiagram:
    """Immutable upright long-knot diagram."""

    __slots__ = ("edges", "crossings", "rotations", "_succ", "_pos")

    def __init__(self, edges: Iterable[int], crossings: Iterable[Crossing | tuple],
                 rotations: Mapping[int, int]):
        self.edges = tuple(edges)
        self.crossings = tuple(sorted(
            c if isinstance(c, Crossing) else Crossing(*c) for c in crossings))
        self.rotations = {int(k): int(v) for k, v in rotations.items() if int(v) != 0}
        self._succ = {a: b for a, b in zip(self.edges, self.edges[1:])}
        self._pos = {e: k for k, e in enumerate(self.edges)}

    # -- derived quantities -------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(c.s for c in self.crossings)

    @property
    def total_rotation(self) -> int:
        return sum(self.rotations.values())

    @property
    def first_edge(self) -> int:
        return self.edges[0]

    @property
    def last_edge(self) -> int:
        return self.edges[-1]

    def successor(self, label: int) -> int:
        try:
            return self._succ[label]
        except KeyError:
            raise DiagramError(f"edge {label} has no successor") from None

    def position(self, label: int) -> int:
        """Index of an edge label in the sorted edge list."""
        return self._pos[label]

    def rotation(self, label: int) -> int:
        return self.rotations.get(label, 0)

    # -- transformations ----------------------------------------------

    def mirror(self) -> "UprightDiagram":
        """Negate every crossing sign and every rotation number."""
        return UprightDiagram(
            self.edges,
            [Crossing(-c.s, c.i, c.j) for c in self.crossings],
            {k: -v for k, v in self.rotations.items()})

    def relabeled(self, mapping: Mapping[int, int]) -> "UprightDiagram":
        return UprightDiagram(
            sorted(mapping[e] for e in self.edges),
            [Crossing(c.s, mapping[c.i], mapping[c.j]) for c in self.crossings],
            {mapping[k]: v for k, v in self.rotations.items()})

    def canonical_relabel(self) -> "UprightDiagram":
        """Relabel edges to consecutive 1..2n+1."""
        return self.relabeled({e: k + 1 for k, e in enumerate(self.edges)})

    # -- comparisons / rendering ----------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UprightDiagram):
            return NotImplemented
        return (self.edges == other.edges and self.crossings == other.crossings
                and self.rotations == other.rotations)

    def __hash__(self) -> int:
        return hash((self.edges, self.crossings,
                     tuple(sorted(self.rotations.items()))))

    def __repr__(self) -> str:
        return (f"UprightDiagram(n={self.n}, edges={self.edges[0]}..{self.edges[-1]}, "
                f"w={self.writhe}, phi={self.total_rotation})")

    def to_json(self) -> dict:
        return {
            "edges": list(self.edges),
            "crossings": [{"s": c.s, "i": c.i, "j": c.j} for c in self.crossings],
            "rotations": {str(k): v for k, v in sorted(self.rotations.items())},
        }

    @staticmethod
    def from_json(obj: Mapping) -> "UprightDiagram":
        d = UprightDiagram(
            obj["edges"],
            [Crossing(c["s"], c["i"], c["j"]) for c in obj["crossings"]],
            {int(k): v for k, v in obj.get("rotations", {}).items()})
        validate(d)
        return d

    @staticmethod
    def loads(text: str) -> "UprightDiagram":
        return UprightDiagram.from_json(json.loads(text))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def unknot() -> UprightDiagram:
    """The crossingless diagram: one edge, empty sums everywhere."""
    return UprightDiagram((1,), (), {})


def validate(d: UprightDiagram) -> None:
    """Check every UprightDiagram invariant, raising DiagramError with the
    first named violation."""
    if not d.edges:
        raise DiagramError("diagram must have at least one edge")
    for a, b in zip(d.edges, d.edges[1:]):
        if a >= b:
            raise DiagramError(f"edge labels must strictly increase ({a} !< {b})")
    if len(d.edges) != 2 * d.n + 1:
        raise DiagramError(
            f"{d.n} crossings require {2 * d.n + 1} edges, found {len(d.edges)}")
    edge_set = set(d.edges)
    last = d.last_edge
    incoming: list[int] = []
    for c in d.crossings:
        if c.i == c.j:
            raise DiagramError(f"crossing {c} has equal over and under edges")
        for label in (c.i, c.j):
            if label not in edge_set:
                raise DiagramError(f"crossing {c} references unknown edge {label}")
            if label == last:
                raise DiagramError(f"last edge {last} cannot enter a crossing")
        incoming += [c.i, c.j]
    if len(set(incoming)) != len(incoming):
        dup = sorted(x for x in set(incoming) if incoming.count(x) > 1)
        raise DiagramError(f"edges {dup} enter more than one crossing")
    if set(incoming) != edge_set - {last}:
        missing = sorted(edge_set - {last} - set(incoming))
        raise DiagramError(f"edges {missing} never enter a crossing (broken strand)")
    for k in d.rotations:
        if k not in edge_set:
            raise DiagramError(f"rotation number attached to unknown edge {k}")


# ---------------------------------------------------------------------------
# PD codes


class PDCode:
    """A planar-diagram code: 4-tuples of arc labels, counterclockwise from
    the incoming under-strand.  Arcs are numbered 1..2n along the knot."""

    __slots__ = ("tuples",)

    def __init__(self, tuples: Sequence[tuple[int, int, int, int]]):
        self.tuples = tuple(tuple(t) for t in tuples)
        self._check()

    @property
    def n(self) -> int:
        return len(self.tuples)

    def _check(self) -> None:
        n = self.n
        counts: dict[int, int] = {}
        for t in self.tuples:
            if len(t) != 4:
                raise PDParseError(f"crossing {t} does not have 4 arcs")
            for a in t:
                if not isinstance(a, int) or a < 1:
                    raise PDParseError(f"arc label {a!r} is not a positive integer")
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, c in counts.items() if c != 2)
        if bad:
            raise PDParseError(f"arc labels {bad} do not appear exactly twice")
        if counts and set(counts) != set(range(1, 2 * n + 1)):
            raise PDParseError(
                f"arc labels must be 1..{2 * n} along the knot, got {sorted(counts)}")
        # Orientation consistency: the under-strand leaves at the opposite
        # position, one step later along the knot.
        for a, b, c, dd in self.tuples:
            if (c - a) % (2 * n) != 1:
                raise PDParseError(
                    f"crossing X[{a},{b},{c},{dd}]: under-strand must exit at "
                    f"arc {a % (2 * n) + 1}, found {c}")
            if (b - dd) % (2 * n) != 1 and (dd - b) % (2 * n) != 1:
                raise PDParseError(
                    f"crossing X[{a},{b},{c},{dd}]: over-strand arcs {b},{dd} "
                    f"are not consecutive along the knot")

    def signed_crossings(self) -> list[tuple[int, int, int]]:
        """(sign, over-in arc, under-in arc) per crossing.

        Positive crossings have the over-strand running 4th -> 2nd tuple slot.
        """
        out = []
        n2 = 2 * self.n
        for a, b, c, dd in self.tuples:
            if (b - dd) % n2 == 1:
                out.append((1, dd, a))
            else:
                out.append((-1, b, a))
        return out

    def relabeled_cut(self, shift: int) -> "PDCode":
        """Move the basepoint: arc k becomes arc ((k - 1 - shift) mod 2n) + 1."""
        n2 = 2 * self.n
        if n2 == 0:
            return self
        m = lambda k: (k - 1 - shift) % n2 + 1
        return PDCode([(m(a), m(b), m(c), m(dd)) for a, b, c, dd in self.tuples])

    def mirror(self) -> "PDCode":
        """Swap over and under strands (reflect through the plane of the page):
        rotate each tuple by one position."""
        return PDCode([(b, c, dd, a) for a, b, c, dd in self.tuples])

    def __eq__(self, other):
        return isinstance(other, PDCode) and self.tuples == other.tuples

    def __repr__(self):
        inner = " ".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in self.tuples)
        return f"PDCode({inner})"


_PD_TOKEN = re.compile(r"\s*(X\s*\[|PD\s*\[|\]|,|\d+)")


def parse_pd(text: str) -> PDCode:
    """Parse `X[a,b,c,d] ...` or `PD[X[...], ...]` into a validated PDCode."""
    tuples: list[tuple[int, ...]] = []
    pos = 0
    current: list[int] | None = None
    wrapped = False
    while pos < len(text):
        m = _PD_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PDParseError(f"syntax error at offset {pos}: {text[pos:pos+10]!r}")
            break
        tok = m.group(1).replace(" ", "")
        pos = m.end()
        if tok == "PD[":
            if wrapped or tuples or current is not None:
                raise PDParseError(f"unexpected PD[ at offset {m.start(1)}")
            wrapped = True
        elif tok == "X[":
            if current is not None:
                raise PDParseError(f"nested X[ at offset {m.start(1)}")
            current = []
        elif tok == "]":
            if current is not None:
                if len(current) != 4:
                    raise PDParseError(
                        f"crossing with {len(current)} arcs at offset {m.start(1)}")
                tuples.append(tuple(current))
                current = None
            elif wrapped:
                wrapped = False
            else:
                raise PDParseError(f"unmatched ] at offset {m.start(1)}")
        elif tok == ",":
            if current is None and not wrapped:
                raise PDParseError(f"unexpected comma at offset {m.start(1)}")
        else:
            if current is None:
                raise PDParseError(f"number outside X[...] at offset {m.start(1)}")
            current.append(int(tok))
    if current is not None:
        raise PDParseError("unterminated X[")
    if wrapped:
        raise PDParseError("unterminated PD[")
    return PDCode(tuples)


# ---------------------------------------------------------------------------
# Dowker-Thistlethwaite codes


def parse_dt(text: str) -> PDCode:
    """Realize a DT code as a PDCode.

    The code lists, for odd visit times 1, 3, ..., 2n-1, the even visit
    time at the same crossing; a negative entry marks the odd visit as the
    over-strand.  Realization embeds the 4-valent shadow with a square
    gadget per crossing that forces the two strands to interleave, so a
    planar embedding exists exactly when the code is realizable.
    """
    entries = [int(x) for x in re.split(r"[\s,]+", text.strip()) if x]
    if not entries:
        return PDCode([])
    n = len(entries)
    odd_bad = [e for e in entries if e % 2]
    if odd_bad:
        raise DTError(f"DT entries must be even, got {odd_bad}")
    if len({abs(e) for e in entries}) != n or {abs(e) for e in entries} != set(
            range(2, 2 * n + 1, 2)):
        raise DTError(f"DT entries must be ±{{2,4,...,{2*n}}} without repeats")

    # visit -> crossing index, and per crossing its odd/even visits.
    odd_visits = list(range(1, 2 * n, 2))
    crossing_of_visit: dict[int, int] = {}
    odd_of = [0] * n
    even_of = [0] * n
    odd_is_under = [True] * n
    for idx, (o, e) in enumerate(zip(odd_visits, entries)):
        crossing_of_visit[o] = idx
        crossing_of_visit[abs(e)] = idx
        odd_of[idx] = o
        even_of[idx] = abs(e)
        odd_is_under[idx] = e > 0

    import networkx as nx

    # Gadget: per crossing a 4-cycle (o-in, e-in, o-out, e-out); opposite
    # corners carry the same strand, so any planar embedding interleaves.
    def corner(idx: int, which: str):
        return ("c", idx, which)

    n2 = 2 * n
    arc_in = lambda t: (t - 2) % n2 + 1   # arc ending at visit t
    arc_out = lambda t: t                 # arc starting at visit t

    graph = nx.Graph()
    for idx in range(n):
        a, b, c, d = (corner(idx, "oin"), corner(idx, "ein"),
                      corner(idx, "oout"), corner(idx, "eout"))
        graph.add_edge(a, b)
        graph.add_edge(b, c)
        graph.add_edge(c, d)
        graph.add_edge(d, a)
    corner_of_arc_end: dict[tuple[int, str], tuple] = {}
    for idx in range(n):
        o, e = odd_of[idx], even_of[idx]
        corner_of_arc_end[(arc_in(o), "end")] = corner(idx, "oin")
        corner_of_arc_end[(arc_out(o), "start")] = corner(idx, "oout")
        corner_of_arc_end[(arc_in(e), "end")] = corner(idx, "ein")
        corner_of_arc_end[(arc_out(e), "start")] = corner(idx, "eout")
    for arc in range(1, n2 + 1):
        graph.add_edge(corner_of_arc_end[(arc, "start")], ("arc", arc))
        graph.add_edge(("arc", arc), corner_of_arc_end[(arc, "end")])

    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise DTError(f"DT code {entries} is not realizable as a planar knot diagram")
    order = embedding.get_data()  # node -> neighbors in clockwise order

    tuples = []
    for idx in range(n):
        o, e = odd_of[idx], even_of[idx]
        pend = {
            "oin": ("arc", arc_in(o)), "oout": ("arc", arc_out(o)),
            "ein": ("arc", arc_in(e)), "eout": ("arc", arc_out(e)),
        }
        v = {w: corner(idx, w) for w in ("oin", "ein", "oout", "eout")}
        nbrs = order[v["oin"]]
        k = nbrs.index(pend["oin"])
        after_pendant = nbrs[(k + 1) % 3]
        if after_pendant == v["ein"]:
            cw = ["oin", "ein", "oout", "eout"]   # square runs clockwise oin->ein->...
        else:
            cw = ["oin", "eout", "oout", "ein"]
        ccw = [cw[0]] + cw[:0:-1]
        start = "oin" if odd_is_under[idx] else "ein"
        k = ccw.index(start)
        ring = ccw[k:] + ccw[:k]
        tuples.append(tuple(pend[w][1] for w in ring))
    try:
        return PDCode(tuples)
    except PDParseError as exc:
        raise DTError(f"DT realization produced an inconsistent diagram: {exc}") from exc


# ---------------------------------------------------------------------------
# Upright conversion


def pd_to_upright(pd: PDCode, _self_check: bool = True) -> UprightDiagram:
    """Convert a PDCode to an upright diagram.

    Sweeps the knot from its basepoint, rotating every crossing so both
    strands point up and counting the cups and caps this forces on each
    edge.  The round knot is cut open at arc 1; the resulting long diagram
    has 2n+1 edges whose first and last rotation numbers are zero by
    construction.  The converted diagram is validated and self-checked
    (the induced Alexander polynomial must be 1 at T=1 and symmetric under
    T -> 1/T); failures raise ConversionError.
    """
    n = pd.n
    if n == 0:
        return unknot()
    n2 = 2 * n
    xs = pd.signed_crossings()

    rots = {k: 0 for k in range(1, n2 + 2)}
    front: list[int] = [1]
    for k in range(1, n2 + 1):
        if -k in front:
            cases = [x for x in front if x == k or x == -k]
            if cases == [k, -k]:
                rots[k] -= 1
            continue
        if k not in front:
            raise ConversionError(
                f"arc {k} never reached the sweep frontier; PD code is not a knot")
        repl: list[int] = []
        for s, over_in, under_in in xs:
            if (s > 0 and over_in == k) or (s < 0 and under_in == k):
                other = under_in if s > 0 else over_in
                repl.extend([other + 1, k + 1, -other])
            elif (s > 0 and under_in == k) or (s < 0 and over_in == k):
                other = over_in if s > 0 else under_in
                rots[other] += 1
                repl.extend([-other, k + 1, other + 1])
        if len(repl) != 3:
            raise ConversionError(
                f"arc {k} is incoming at {len(repl) // 3} crossings, expected 1")
        at = front.index(k)
        front[at:at + 1] = repl

    diagram = UprightDiagram(
        range(1, n2 + 2),
        [Crossing(s, i, j) for s, i, j in xs],
        rots)
    validate(diagram)
    if _self_check:
        _converter_self_check(diagram)
    return diagram


def _converter_self_check(d: UprightDiagram) -> None:
    from . import invariant

    try:
        delta = invariant.alexander(d)
    except Exception as exc:
        raise ConversionError(
            f"conversion self-check could not compute the Alexander polynomial "
            f"({exc}); diagram {d.to_json()}") from exc
    problems = []
    if delta.evaluate(1) != 1:
        problems.append(f"delta(1) = {delta.evaluate(1)} != 1")
    if not delta.is_palindromic():
        problems.append(f"delta = {delta} is not symmetric under T -> 1/T")
    if problems:
        raise ConversionError(
            "conversion self-check failed: " + "; ".join(problems)
            + f"; diagram {d.to_json()}")
