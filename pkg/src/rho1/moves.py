"""Upright Reidemeister moves: R1l, R1r, R2b, R2c, R3 and the swirls.

Forward is the reducing (or left-to-right) reading of each move;
backward inserts the pattern.  Patterns are matched strictly, including
the rotation numbers they pin, and every application preserves the
boundary normalization (first and last edges carry rotation 0) or is
rejected.  Fresh labels are allocated by doubling all labels until the
needed gaps exist, as permitted by the non-consecutive labelling rule.

A note on scope: applying an insertion at an arbitrary pair of edges is
a formal rewrite of the combinatorial data; the data does not track the
planar embedding, so such sites need not correspond to a plane picture.
The computed pair (Delta, rho1) is preserved regardless, because the
move identities are local consequences of the Green-function relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from .diagram import DiagramError, UprightDiagram, validate

KINDS = ("R1l", "R1r", "R2b", "R2c", "R3", "SwPlus", "SwMinus")


class MoveError(DiagramError):
    """The move is not applicable at the requested site."""


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: tuple[int, ...]
    direction: str = "forward"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        if self.direction not in ("forward", "backward"):
            raise MoveError(f"direction must be forward or backward, "
                            f"got {self.direction!r}")

    def reversed(self) -> "MoveSpec":
        other = "backward" if self.direction == "forward" else "forward"
        return MoveSpec(self.kind, self.site, other)


class _Work:
    """Mutable diagram parts during one move application."""

    def __init__(self, d: UprightDiagram, site: tuple[int, ...]):
        self.edges = list(d.edges)
        self.crossings = [(c.s, c.i, c.j) for c in d.crossings]
        self.rot = dict(d.rotations)
        self.site = list(site)

    def succ(self, e: int) -> int | None:
        idx = self.edges.index(e)
        return self.edges[idx + 1] if idx + 1 < len(self.edges) else None

    def respace(self) -> None:
        self.edges = [2 * e for e in self.edges]
        self.crossings = [(s, 2 * i, 2 * j) for s, i, j in self.crossings]
        self.rot = {2 * k: v for k, v in self.rot.items()}
        self.site = [2 * e for e in self.site]

    def ensure_gap(self, site_positions: list[int], count: int) -> None:
        """Respace until `count` fresh integer labels fit after each of the
        site edges named by index into the (relabelled) site."""
        while True:
            ok = True
            for pos in site_positions:
                e = self.site[pos]
                idx = self.edges.index(e)
                if idx + 1 < len(self.edges) and self.edges[idx + 1] - e <= count:
                    ok = False
                    break
            if ok:
                return
            self.respace()

    def subdivide(self, e: int, count: int) -> list[int]:
        """Insert `count` new edges right after e; crossings that ended on e
        now end on the last new segment.  Returns the new labels."""
        new = [e + t for t in range(1, count + 1)]
        tail = new[-1]
        self.crossings = [
            (s, tail if i == e else i, tail if j == e else j)
            for s, i, j in self.crossings]
        self.edges.extend(new)
        self.edges.sort()
        return new

    def remove_edges_into(self, removed: list[int], target: int) -> None:
        """Delete `removed` edges; crossings that ended on the last removed
        edge now end on `target`; rotations of removed edges accumulate on
        `target` (caller adjusts for pattern-consumed rotations)."""
        tail = removed[-1]
        self.crossings = [
            (s, target if i == tail else i, target if j == tail else j)
            for s, i, j in self.crossings]
        gained = 0
        for e in removed:
            gained += self.rot.pop(e, 0)
            self.edges.remove(e)
        if gained:
            self.rot[target] = self.rot.get(target, 0) + gained

    def pop_crossing(self, s: int, i: int, j: int) -> None:
        try:
            self.crossings.remove((s, i, j))
        except ValueError:
            raise MoveError(f"no crossing ({s:+d}, {i}, {j}) in the diagram") from None

    def add_rot(self, e: int, delta: int) -> None:
        v = self.rot.get(e, 0) + delta
        if v:
            self.rot[e] = v
        else:
            self.rot.pop(e, None)

    def build(self) -> UprightDiagram:
        out = UprightDiagram(sorted(self.edges), self.crossings, self.rot)
        validate(out)
        if out.rotation(out.first_edge) or out.rotation(out.last_edge):
            raise MoveError(
                "move would leave a rotation number on the first or last edge")
        return out


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise MoveError(message)


def _chain(w: _Work, e: int, length: int) -> list[int]:
    out = [e]
    for _ in range(length - 1):
        nxt = w.succ(out[-1])
        _require(nxt is not None, f"edge {out[-1]} has no successor")
        out.append(nxt)
    return out


def apply_move(d: UprightDiagram, move: MoveSpec) -> UprightDiagram:
    """Apply one upright move, returning a fresh diagram.

    Raises MoveError when the site does not match the move's pattern
    exactly (including its pinned rotation numbers).
    """
    validate(d)
    handler = _HANDLERS.get((move.kind, move.direction))
    if handler is None:
        raise MoveError(f"unsupported move {move.kind} {move.direction}")
    w = _Work(d, move.site)
    for e in w.site:
        _require(e in d._pos, f"site edge {e} not in the diagram")
    handler(w)
    return w.build()


# -- kinks ------------------------------------------------------------------


def _r1l_backward(w: _Work) -> None:
    w.ensure_gap([0], 2)
    e = w.site[0]
    loop, _tail = w.subdivide(e, 2)
    w.crossings.append((1, loop, e))
    w.add_rot(loop, 1)


def _r1l_forward(w: _Work) -> None:
    (a,) = w.site
    chain = _chain(w, a, 3)
    a, b, bb = chain
    w.pop_crossing(1, b, a)
    _require(w.rot.get(b, 0) == 1, f"loop edge {b} must carry rotation +1")
    w.add_rot(b, -1)
    w.remove_edges_into([b, bb], a)


def _r1r_backward(w: _Work) -> None:
    w.ensure_gap([0], 2)
    e = w.site[0]
    loop, _tail = w.subdivide(e, 2)
    w.crossings.append((1, e, loop))
    w.add_rot(loop, -1)


def _r1r_forward(w: _Work) -> None:
    (a,) = w.site
    a, b, bb = _chain(w, a, 3)
    w.pop_crossing(1, a, b)
    _require(w.rot.get(b, 0) == -1, f"loop edge {b} must carry rotation -1")
    w.add_rot(b, 1)
    w.remove_edges_into([b, bb], a)


# -- R2 ---------------------------------------------------------------------


def _r2b_backward(w: _Work) -> None:
    a, b = w.site
    _require(a != b, "the two strands of R2b must be distinct edges")
    w.ensure_gap([0, 1], 2)
    a, b = w.site
    a1, _a2 = w.subdivide(a, 2)
    b1, _b2 = w.subdivide(b, 2)
    w.crossings.append((1, a, b))
    w.crossings.append((-1, a1, b1))


def _r2b_forward(w: _Work) -> None:
    x, y = w.site
    xc = _chain(w, x, 3)
    yc = _chain(w, y, 3)
    _require(len(set(xc + yc)) == 6, "R2b strands overlap")
    sign = None
    for s in (1, -1):
        if (s, x, y) in w.crossings and (-s, xc[1], yc[1]) in w.crossings:
            sign = s
            break
    _require(sign is not None, f"no cancelling crossing pair over ({x}, {y})")
    _require(w.rot.get(xc[1], 0) == 0 and w.rot.get(yc[1], 0) == 0,
             "R2b middle edges must be rotation-free")
    w.pop_crossing(sign, x, y)
    w.pop_crossing(-sign, xc[1], yc[1])
    w.remove_edges_into(xc[1:], x)
    w.remove_edges_into(yc[1:], y)


def _r2c_backward(w: _Work) -> None:
    a, b = w.site
    _require(a != b, "the two strands of R2c must be distinct edges")
    w.ensure_gap([0, 1], 2)
    a, b = w.site
    a1, _a2 = w.subdivide(a, 2)
    b1, _b2 = w.subdivide(b, 2)
    w.crossings.append((-1, a, b1))
    w.crossings.append((1, a1, b))
    w.add_rot(b1, 1)
    w.add_rot(b, -1)


def _r2c_forward(w: _Work) -> None:
    x, y = w.site
    xc = _chain(w, x, 3)
    yc = _chain(w, y, 3)
    _require(len(set(xc + yc)) == 6, "R2c strands overlap")
    _require((-1, x, yc[1]) in w.crossings and (1, xc[1], y) in w.crossings,
             f"no cyclic crossing pair over ({x}, {y})")
    _require(w.rot.get(xc[1], 0) == 0, "R2c over-strand middle edge must be rotation-free")
    _require(w.rot.get(yc[1], 0) == 1, "R2c under-strand middle edge must carry rotation +1")
    w.pop_crossing(-1, x, yc[1])
    w.pop_crossing(1, xc[1], y)
    # The +1 the pattern pins on the middle edge survives onto the merged
    # strand (the right side of the move keeps a single rotation).
    w.remove_edges_into(xc[1:], x)
    w.remove_edges_into(yc[1:], y)


# -- R3 ---------------------------------------------------------------------


def _r3_sides(w: _Work, i: int, j: int, k: int):
    ic = _chain(w, i, 3)
    jc = _chain(w, j, 3)
    kc = _chain(w, k, 3)
    _require(len(set(ic + jc + kc)) == 9, "R3 strands overlap")
    for mid in (ic[1], jc[1], kc[1]):
        _require(w.rot.get(mid, 0) == 0, "R3 middle edges must be rotation-free")
    left = [(1, j, k), (1, i, kc[1]), (1, ic[1], jc[1])]
    right = [(1, i, j), (1, ic[1], k), (1, jc[1], kc[1])]
    return left, right


def _r3_forward(w: _Work) -> None:
    i, j, k = w.site
    left, right = _r3_sides(w, i, j, k)
    for c in left:
        w.pop_crossing(*c)
    w.crossings.extend(right)


def _r3_backward(w: _Work) -> None:
    i, j, k = w.site
    left, right = _r3_sides(w, i, j, k)
    for c in right:
        w.pop_crossing(*c)
    w.crossings.extend(left)


# -- swirls -----------------------------------------------------------------


def _swirl(w: _Work, sign: int, delta: int) -> None:
    i, j = w.site
    _require((sign, i, j) in w.crossings,
             f"no crossing ({sign:+d}, {i}, {j}) in the diagram")
    si, sj = w.succ(i), w.succ(j)
    _require(si is not None and sj is not None, "swirl edges need successors")
    _require(len({i, j, si, sj}) == 4, "swirl needs four distinct edges")
    w.add_rot(i, delta)
    w.add_rot(j, delta)
    w.add_rot(si, -delta)
    w.add_rot(sj, -delta)


_HANDLERS = {
    ("R1l", "forward"): _r1l_forward,
    ("R1l", "backward"): _r1l_backward,
    ("R1r", "forward"): _r1r_forward,
    ("R1r", "backward"): _r1r_backward,
    ("R2b", "forward"): _r2b_forward,
    ("R2b", "backward"): _r2b_backward,
    ("R2c", "forward"): _r2c_forward,
    ("R2c", "backward"): _r2c_backward,
    ("R3", "forward"): _r3_forward,
    ("R3", "backward"): _r3_backward,
    ("SwPlus", "forward"): lambda w: _swirl(w, 1, -1),
    ("SwPlus", "backward"): lambda w: _swirl(w, 1, +1),
    ("SwMinus", "forward"): lambda w: _swirl(w, -1, -1),
    ("SwMinus", "backward"): lambda w: _swirl(w, -1, +1),
}


def _candidates(d: UprightDiagram, kind: str, direction: str) -> list[tuple[int, ...]]:
    cs = d.crossings
    if direction == "backward":
        if kind in ("R1l", "R1r"):
            return [(e,) for e in d.edges]
        if kind in ("R2b", "R2c"):
            return [(a, b) for a in d.edges for b in d.edges if a != b]
        if kind == "R3":
            out = []
            for c1 in cs:
                if c1.s != 1:
                    continue
                for c2 in cs:
                    if c2.s == 1 and c2.i == _succ_or_none(d, c1.i):
                        out.append((c1.i, c1.j, c2.j))
            return out
        if kind in ("SwPlus", "SwMinus"):
            want = 1 if kind == "SwPlus" else -1
            return [(c.i, c.j) for c in cs if c.s == want]
    else:
        if kind == "R1l":
            return [(c.j,) for c in cs if c.s == 1]
        if kind == "R1r":
            return [(c.i,) for c in cs if c.s == 1]
        if kind == "R2b":
            return [(c.i, c.j) for c in cs]
        if kind == "R2c":
            out = []
            for c in cs:
                if c.s == -1:
                    y = _pred_or_none(d, c.j)
                    if y is not None:
                        out.append((c.i, y))
            return out
        if kind == "R3":
            out = []
            under = {c.j: c for c in cs if c.s == 1}
            for c1 in cs:
                if c1.s != 1:
                    continue
                jj, kk = c1.i, c1.j
                sk = _succ_or_none(d, kk)
                c2 = under.get(sk) if sk is not None else None
                if c2 is not None:
                    out.append((c2.i, jj, kk))
            return out
        if kind in ("SwPlus", "SwMinus"):
            want = 1 if kind == "SwPlus" else -1
            return [(c.i, c.j) for c in cs if c.s == want]
    raise MoveError(f"unknown move kind {kind!r}")


def _succ_or_none(d: UprightDiagram, e: int) -> int | None:
    idx = d.position(e)
    return d.edges[idx + 1] if idx + 1 < len(d.edges) else None


def _pred_or_none(d: UprightDiagram, e: int) -> int | None:
    idx = d.position(e)
    return d.edges[idx - 1] if idx > 0 else None


def enumerate_move_sites(d: UprightDiagram, kind: str,
                         direction: str | None = None) -> list[MoveSpec]:
    """Every applicable MoveSpec of the given kind (both directions when
    direction is None).  Applicability is verified by actually applying
    the move to a scratch copy."""
    validate(d)
    directions = (direction,) if direction else ("forward", "backward")
    out: list[MoveSpec] = []
    for direc in directions:
        seen = set()
        for site in _candidates(d, kind, direc):
            if site in seen:
                continue
            seen.add(site)
            spec = MoveSpec(kind, tuple(site), direc)
            try:
                apply_move(d, spec)
            except MoveError:
                continue
            out.append(spec)
    return out
