"""Numeric oracle: truncated weighted path sums on a diagram.

Unit flux injected on one edge propagates forward; at an overpass a
share T0^s continues on the over-strand and 1 - T0^s drops to the lower
strand, underpasses pass flux through untouched, and the last edge
drains.  Accumulated counter readings converge (geometrically, for T0
near 1) to the corresponding Green-function entries.  Floating point
throughout: this module is a cross-check for the exact engine, never a
source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import UprightDiagram, validate


@dataclass
class TrafficState:
    """Flux still moving (intensity) and accumulated counter readings."""

    intensity: dict[int, float] = field(default_factory=dict)
    counters: dict[int, float] = field(default_factory=dict)


def _routing(d: UprightDiagram, t0: float) -> dict[int, list[tuple[int, float]]]:
    """For each edge, the (target edge, weight) pairs its outgoing flux takes."""
    routes: dict[int, list[tuple[int, float]]] = {e: [] for e in d.edges}
    for c in d.crossings:
        through = t0 if c.s > 0 else 1.0 / t0
        routes[c.i] = [(d.successor(c.i), through),
                       (d.successor(c.j), 1.0 - through)]
        routes[c.j] = [(d.successor(c.j), 1.0)]
    routes[d.last_edge] = []
    return routes


def _check_point(t0: float) -> None:
    if t0 == 0:
        raise ValueError("T0 must be nonzero")
    # Strict bound on |1-T0|; the closed boundary |1-1/T0| = 1 (i.e. T0 = 1/2)
    # is allowed because truncated readings stay finite there and positive
    # crossings still converge.
    if abs(1.0 - t0) >= 1 or abs(1.0 - 1.0 / t0) > 1:
        raise ValueError(
            f"T0 = {t0} is outside the convergence region "
            f"(need |1-T0| < 1 and |1-1/T0| <= 1)")


def propagate(d: UprightDiagram, source: int, t0: float, depth: int) -> TrafficState:
    """Inject unit flux at `source` and run `depth` traversal steps.

    The counter on the source edge sits just past the injection point, so
    it reads the injected unit immediately; every other counter reads flux
    as it arrives.
    """
    validate(d)
    _check_point(t0)
    if source not in d._pos:
        raise ValueError(f"unknown source edge {source}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    routes = _routing(d, t0)
    counters = {e: 0.0 for e in d.edges}
    counters[source] = 1.0
    flux = {source: 1.0}
    for _ in range(depth):
        nxt: dict[int, float] = {}
        for edge, amount in flux.items():
            for target, weight in routes[edge]:
                share = amount * weight
                if share:
                    nxt[target] = nxt.get(target, 0.0) + share
                    counters[target] += share
        flux = nxt
        if not flux:
            break
    return TrafficState(intensity=flux, counters=counters)


def green_oracle(d: UprightDiagram, alpha: int, beta: int, t0: float,
                 depth: int = 2000) -> float:
    """Truncated path-sum estimate of the Green entry g_{alpha,beta} at T0."""
    state = propagate(d, alpha, t0, depth)
    if beta not in state.counters:
        raise ValueError(f"unknown counter edge {beta}")
    return state.counters[beta]


def tangle_exits(crossings, strands, entry: str, t0: float) -> dict[str, float]:
    """Exit distribution of unit flux through a finite acyclic tangle.

    `strands` maps a strand name to its chain of edge names (successor
    order); `crossings` is a list of (sign, over_in, under_in) edge-name
    triples.  Flux entering at `entry` is pushed until it rests on the
    chain-final edges, whose accumulated readings are returned.  Used to
    replay local traffic computations (for example that both sides of the
    braid-like three-crossing rearrangement route traffic identically).
    """
    succ: dict[str, str] = {}
    for chain in strands.values():
        for a, b in zip(chain, chain[1:]):
            succ[a] = b
    routes: dict[str, list[tuple[str, float]]] = {}
    for s, over_in, under_in in crossings:
        through = t0 if s > 0 else 1.0 / t0
        routes[over_in] = [(succ[over_in], through), (succ[under_in], 1.0 - through)]
        routes[under_in] = [(succ[under_in], 1.0)]
    exits = {chain[-1] for chain in strands.values()}
    flux = {entry: 1.0}
    out = {e: 0.0 for e in exits}
    guard = len(succ) + len(crossings) + 2
    for _ in range(guard):
        nxt: dict[str, float] = {}
        for edge, amount in flux.items():
            if edge in exits:
                out[edge] += amount
                continue
            targets = routes.get(edge, [(succ[edge], 1.0)] if edge in succ else [])
            for target, weight in targets:
                nxt[target] = nxt.get(target, 0.0) + amount * weight
        flux = nxt
        if not flux:
            break
    else:
        raise RuntimeError("tangle propagation did not drain; cyclic strands?")
    return out
