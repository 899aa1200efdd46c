"""Deterministic exact determinant/adjugate for integer Laurent matrices.

Strategy: evaluate the matrix at small integer points, invert modulo
several word-size primes with vectorized Gauss-Jordan, interpolate the
coefficient vectors per prime, and CRT-lift.  Degree bounds come from
row degree sums; coefficient bounds from a Hadamard-style product of
row l1-norms, so the number of points and primes is rigorous and the
result is exact, not probabilistic.

Internal module: callers guarantee integer coefficients.  The public
fraction-free path in `polymat` remains the reference implementation;
the two are cross-checked in the test suite.
"""

from __future__ import annotations

import numpy as np

from .laurent import LaurentPoly

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below_2_25(count: int) -> list[int]:
    primes = []
    n = (1 << 25) - 1
    while len(primes) < count:
        if _is_prime(n):
            primes.append(n)
        n -= 2
    return primes


def _jordan_inverse_mod(mat: np.ndarray, p: int):
    """(det, inverse) of `mat` modulo p, or None when singular mod p.

    int64 safety: entries are < 2^25, products < 2^50.
    """
    m = mat.shape[0]
    a = mat % p
    inv = np.eye(m, dtype=np.int64)
    det = 1
    for col in range(m):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            return None
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            inv[[col, piv]] = inv[[piv, col]]
            det = p - det
        head = int(a[col, col])
        det = det * head % p
        scale = pow(head, p - 2, p)
        a[col] = a[col] * scale % p
        inv[col] = inv[col] * scale % p
        factors = a[:, col].copy()
        factors[col] = 0
        a -= factors[:, None] * a[col][None, :]
        a %= p
        inv -= factors[:, None] * inv[col][None, :]
        inv %= p
    return det, inv


def _crt_pair(r1: int, p1: int, r2: int, p2: int) -> tuple[int, int]:
    inv = pow(p1 % p2, p2 - 2, p2)
    t = (r2 - r1) * inv % p2
    return r1 + p1 * t, p1 * p2


def det_and_adjugate(matrix, positions=None):
    """Exact (det, adjugate entries) of a PolyMatrix with integer coefficients.

    `positions` is an iterable of (row, col) pairs naming the adjugate
    entries to reconstruct; None means all of them.  The adjugate H
    satisfies matrix @ H = H @ matrix = det * identity.
    """
    m = matrix.size
    if m == 0:
        return LaurentPoly(1), {}
    coef_rows = []
    smin = 0
    smax = 0
    for row in matrix.rows:
        crow = []
        for entry in row:
            terms = dict(entry.items())
            for e, c in terms.items():
                if not isinstance(c, int):
                    raise TypeError("modular path requires integer coefficients")
                smin = min(smin, e)
                smax = max(smax, e)
            crow.append(terms)
        coef_rows.append(crow)

    if positions is None:
        positions = [(i, j) for i in range(m) for j in range(m)]
    else:
        positions = list(positions)

    # Shift every entry by T^(-smin) so we interpolate ordinary polynomials.
    shift = -smin
    degs = sorted({e + shift for crow in coef_rows for terms in crow for e in terms})
    coef_mats = {d: np.zeros((m, m), dtype=np.int64) for d in degs}
    row_max_deg = [0] * m
    row_l1 = [0] * m
    for i, crow in enumerate(coef_rows):
        for j, terms in enumerate(crow):
            for e, c in terms.items():
                coef_mats[e + shift][i, j] = c
                row_max_deg[i] = max(row_max_deg[i], e + shift)
                row_l1[i] += abs(c)

    n_points = sum(row_max_deg) + 1
    bound = 1
    for v in row_l1:
        bound *= max(v, 1)
    n_primes = max(1, -(-(bound.bit_length() + 2) // 25))
    primes = _primes_below_2_25(n_primes)

    pos_idx = np.array(positions, dtype=np.int64) if positions else None
    coef_residues = []   # per prime: (N, len(positions) + 1) coefficient array
    for p in primes:
        points: list[int] = []
        values = np.zeros((n_points, len(positions) + 1), dtype=np.int64)
        t = 1
        attempts = 0
        while len(points) < n_points:
            attempts += 1
            if attempts > n_points + sum(row_max_deg) + 64:
                raise ArithmeticError("could not find enough good evaluation points")
            mt = np.zeros((m, m), dtype=np.int64)
            tp = 1
            for d in range(max(degs) + 1 if degs else 1):
                if d in coef_mats:
                    mt = (mt + coef_mats[d] % p * tp) % p
                tp = tp * t % p
            result = _jordan_inverse_mod(mt, p)
            if result is None:
                t += 1
                continue
            det_t, inv_t = result
            k = len(points)
            if positions:
                adj = inv_t[pos_idx[:, 0], pos_idx[:, 1]] * det_t % p
                values[k, :-1] = adj
            values[k, -1] = det_t
            points.append(t)
            t += 1
        # Solve the Vandermonde system for polynomial coefficients mod p.
        vand = np.ones((n_points, n_points), dtype=np.int64)
        for k in range(1, n_points):
            vand[:, k] = vand[:, k - 1] * np.array(points, dtype=np.int64) % p
        inv_result = _jordan_inverse_mod(vand, p)
        if inv_result is None:
            raise ArithmeticError("Vandermonde singular mod p (duplicate points?)")
        _, vinv = inv_result
        coef_residues.append(_matmul_mod(vinv, values, p))

    # CRT-lift each coefficient to a symmetric-range integer.
    det_terms: dict[int, int] = {}
    adj_terms: list[dict[int, int]] = [dict() for _ in positions]
    half_products = []
    for k in range(n_points):
        for c in range(len(positions) + 1):
            residues = [int(cr[k, c]) for cr in coef_residues]
            if not any(residues):
                continue
            val, mod = residues[0], primes[0]
            for r, p in zip(residues[1:], primes[1:]):
                val, mod = _crt_pair(val, mod, r, p)
            if val > mod // 2:
                val -= mod
            if c == len(positions):
                det_terms[k] = val
            else:
                adj_terms[c][k] = val

    # Undo the T^(-smin) entry scaling: det gained m*shift, adjugate (m-1)*shift.
    det = LaurentPoly({e - m * shift: v for e, v in det_terms.items()})
    adj = {
        pos: LaurentPoly({e - (m - 1) * shift: v for e, v in adj_terms[idx].items()})
        for idx, pos in enumerate(positions)
    }
    return det, adj


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) % p in int64 without overflow.

    Inner dimension is at most a few hundred and operands are < 2^25,
    so plain int64 matmul cannot overflow (accumulates < 2^59); the
    block split below keeps that true for any larger inner dimension.
    """
    inner = a.shape[1]
    block = 1 << 9
    if inner <= block:
        return a @ b % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for lo in range(0, inner, block):
        hi = min(lo + block, inner)
        acc = (acc + a[:, lo:hi] @ b[lo:hi, :]) % p
    return acc
