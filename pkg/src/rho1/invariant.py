"""The core pipeline: matrix A, normalized Alexander polynomial, Green
function, and the quadratic correction invariant rho1.

Everything is exact.  For one diagram, A is eliminated once; all
crossing terms share the resulting scaled inverse.  Small matrices go
through the fraction-free path in `polymat`; larger ones through the
modular evaluation-interpolation engine, which returns identical exact
results (the test suite pins the two against each other).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import _modular, polymat
from .diagram import Crossing, UprightDiagram, validate
from .laurent import ONE, ZERO, LaurentPoly
from .polymat import GreenMatrix, PolyMatrix

# Above this size build on the modular engine instead of Bareiss.
_BAREISS_LIMIT = 19


class ParityError(ValueError):
    """Total rotation plus writhe came out odd, so T^((-phi-w)/2) is not a
    Laurent monomial.  Upright diagrams of knots never do this."""


class Rho1StructureWarning(UserWarning):
    """An empirically expected structural property of rho1 failed to hold."""


@dataclass(frozen=True)
class InvariantPair:
    """The computed outputs for one diagram."""

    delta: LaurentPoly
    rho1: LaurentPoly
    writhe: int
    total_rotation: int
    crossing_count: int

    def to_json(self) -> dict:
        return {
            "delta": self.delta.to_json(),
            "rho1": self.rho1.to_json(),
            "w": self.writhe,
            "phi": self.total_rotation,
            "n": self.crossing_count,
        }


def build_A(d: UprightDiagram) -> PolyMatrix:
    """The (2n+1)x(2n+1) matrix over Laurent polynomials, identity plus one
    block per crossing:

        row i gains -T^s at column i+ and T^s - 1 at column j+,
        row j gains -1 at column j+.
    """
    validate(d)
    m = len(d.edges)
    A = PolyMatrix.identity(m)
    for c in d.crossings:
        ri = d.position(c.i)
        rj = d.position(c.j)
        ci = d.position(d.successor(c.i))
        cj = d.position(d.successor(c.j))
        ts = LaurentPoly.monomial(c.s)
        A[ri, ci] = A[ri, ci] - ts
        A[ri, cj] = A[ri, cj] + ts - 1
        A[rj, cj] = A[rj, cj] - 1
    return A


def _normalization_exponent(d: UprightDiagram) -> int:
    phi = d.total_rotation
    w = d.writhe
    if (phi + w) % 2:
        raise ParityError(
            f"total rotation {phi} plus writhe {w} is odd; cannot take "
            f"T^({-phi - w}/2) without a square root of T")
    return (-phi - w) // 2


def _needed_positions(d: UprightDiagram) -> list[tuple[int, int]]:
    m = len(d.edges)
    positions = [(k, k) for k in range(m)]
    seen = set(positions)
    for c in d.crossings:
        i, j = d.position(c.i), d.position(c.j)
        sj = d.position(d.successor(c.j))
        for p in ((j, i), (sj, j), (j, sj), (i, j)):
            if p not in seen:
                seen.add(p)
                positions.append(p)
    return positions


def _green_data(d: UprightDiagram, positions, engine: str = "auto"):
    """(det, {position: adjugate entry}) for the requested index pairs."""
    A = build_A(d)
    if engine == "auto":
        engine = "bareiss" if A.size <= _BAREISS_LIMIT else "modular"
    if engine == "bareiss":
        green = polymat.scaled_inverse(A)
        H = green.numerators
        if positions is None:
            positions = [(i, j) for i in range(A.size) for j in range(A.size)]
        return green.denominator, {p: H[p[0], p[1]] for p in positions}
    if engine == "modular":
        try:
            return _modular.det_and_adjugate(A, positions)
        except ArithmeticError as exc:
            raise AssertionError(
                f"diagram matrix unexpectedly singular: {exc}") from exc
    raise ValueError(f"unknown engine {engine!r}")


def alexander(d: UprightDiagram, engine: str = "auto") -> LaurentPoly:
    """Normalized Alexander polynomial: T^((-phi-w)/2) * det(A)."""
    validate(d)
    exponent = _normalization_exponent(d)
    A = build_A(d)
    if engine == "auto":
        engine = "bareiss" if A.size <= _BAREISS_LIMIT else "modular"
    if engine == "bareiss":
        det = polymat.det_fraction_free(A)
    else:
        det, _ = _modular.det_and_adjugate(A, [])
    return det.shift(exponent)


def green(d: UprightDiagram, engine: str = "auto") -> GreenMatrix:
    """The full Green function of the diagram as a scaled inverse (H, det).

    Always defined for valid diagrams: at T=1 the matrix is triangular with
    unit diagonal, so the determinant is not the zero polynomial.
    """
    validate(d)
    A = build_A(d)
    if engine == "auto":
        engine = "bareiss" if A.size <= _BAREISS_LIMIT else "modular"
    if engine == "bareiss":
        try:
            return polymat.scaled_inverse(A)
        except polymat.SingularMatrixError as exc:
            raise AssertionError(
                f"diagram matrix unexpectedly singular: {exc}") from exc
    det, adj = _green_data(d, None, engine="modular")
    m = A.size
    H = PolyMatrix([[adj[(i, j)] for j in range(m)] for i in range(m)])
    return GreenMatrix(H, det)


def r1_term(c: Crossing, G: GreenMatrix, d: UprightDiagram
            ) -> tuple[LaurentPoly, LaurentPoly]:
    """The crossing term

        R1(c) = s * ( g_ji (g_{j+,j} + g_{j,j+} - g_ij)
                      - g_ii (g_{j,j+} - 1) - 1/2 )

    returned as (numerator, denominator) with denominator det(A)^2.
    """
    H, det = G.numerators, G.denominator
    i, j = d.position(c.i), d.position(c.j)
    sj = d.position(d.successor(c.j))
    quad = (H[j, i] * (H[sj, j] + H[j, sj] - H[i, j])
            - H[i, i] * (H[j, sj] - det))
    num = c.s * (quad - Fraction(1, 2) * det * det)
    return num, det * det


def rho1(d: UprightDiagram, engine: str = "auto") -> LaurentPoly:
    """The perturbed invariant

        rho1 = Delta^2 * ( sum_c R1(c) - sum_k phi_k (g_kk - 1/2) ).

    Assembled symbolically as T^(-(phi+w)) times an integer polynomial in
    the adjugate entries and det(A), so the denominators cancel by
    construction; integrality of the result is asserted, and the
    empirically observed structure (divisibility by (T-1)^2 and symmetry
    under T -> 1/T) is reported as a warning when violated.
    """
    validate(d)
    phi = d.total_rotation
    w = d.writhe
    _normalization_exponent(d)  # parity hard error before any real work
    det, H = _green_data(d, _needed_positions(d), engine)

    def h(a: int, b: int) -> LaurentPoly:
        return H[(a, b)]

    acc = ZERO
    for c in d.crossings:
        i, j = d.position(c.i), d.position(c.j)
        sj = d.position(d.successor(c.j))
        quad = (h(j, i) * (h(sj, j) + h(j, sj) - h(i, j))
                - h(i, i) * (h(j, sj) - det))
        acc = acc + quad if c.s > 0 else acc - quad
    rot = ZERO
    for label, phi_k in d.rotations.items():
        rot = rot + phi_k * h(d.position(label), d.position(label))
    bracket = acc + ((phi - w) // 2) * det * det - det * rot
    result = bracket.shift(-(phi + w))

    if not result.is_integral():
        raise AssertionError(
            f"rho1 came out non-integral ({result}); this contradicts the "
            f"denominator-clearing construction")
    if not result.is_zero:
        if not result.is_palindromic():
            warnings.warn(
                f"rho1 = {result} is not symmetric under T -> 1/T",
                Rho1StructureWarning, stacklevel=2)
        if not result.divisible_by((LaurentPoly.monomial(1) - 1) ** 2):
            warnings.warn(
                f"rho1 = {result} is not divisible by (T-1)^2",
                Rho1StructureWarning, stacklevel=2)
    return result


def invariant_pair(d: UprightDiagram, engine: str = "auto") -> InvariantPair:
    """Compute (Delta, rho1) plus diagram bookkeeping, with every output
    invariant asserted."""
    validate(d)
    phi = d.total_rotation
    w = d.writhe
    exponent = _normalization_exponent(d)
    det, H = _green_data(d, _needed_positions(d), engine)
    delta = det.shift(exponent)

    if delta.evaluate(1) != 1:
        raise AssertionError(f"delta(1) = {delta.evaluate(1)} != 1 for {d!r}")
    if not delta.is_palindromic():
        raise AssertionError(f"delta = {delta} is not symmetric under T -> 1/T")

    acc = ZERO
    for c in d.crossings:
        i, j = d.position(c.i), d.position(c.j)
        sj = d.position(d.successor(c.j))
        quad = (H[(j, i)] * (H[(sj, j)] + H[(j, sj)] - H[(i, j)])
                - H[(i, i)] * (H[(j, sj)] - det))
        acc = acc + quad if c.s > 0 else acc - quad
    rot = ZERO
    for label, phi_k in d.rotations.items():
        rot = rot + phi_k * H[(d.position(label), d.position(label))]
    bracket = acc + ((phi - w) // 2) * det * det - det * rot
    r = bracket.shift(-(phi + w))
    if not r.is_integral():
        raise AssertionError(f"rho1 came out non-integral: {r}")
    return InvariantPair(delta=delta, rho1=r, writhe=w, total_rotation=phi,
                         crossing_count=d.n)
