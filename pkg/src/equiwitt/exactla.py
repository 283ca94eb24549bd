"""Dense exact linear algebra over GF(2^e).

Matrices are 2-D ``int64`` numpy arrays of field elements; the field is
passed alongside.  Vectors are rows and act on the right (``v @ g``), so a
"kernel" is always the left kernel ``{v : v m = 0}``.  Subspaces are stored
as bases in reduced row echelon form, which makes subspace equality an
array comparison.
"""

from __future__ import annotations

import numpy as np

from .gfield import FieldSpec


class LinAlgError(ValueError):
    pass


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def as_mat(entries, cols: int | None = None) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int64)
    if a.ndim == 1 and a.size == 0:
        a = a.reshape(0, cols or 0)
    if a.ndim != 2:
        raise LinAlgError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def check_entries(f: FieldSpec, m: np.ndarray) -> None:
    if m.size and (m.min() < 0 or m.max() >= f.q):
        raise LinAlgError(f"matrix entries outside GF({f.q})")


def _bitplanes(a: np.ndarray, e: int) -> list[np.ndarray]:
    return [((a >> i) & 1).astype(np.float64) for i in range(e)]


def matmul(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product over GF(2^e).

    Splits both factors into F_2 bit planes, multiplies planes with BLAS
    (sums stay below 2^53, so float64 is exact), and reduces the resulting
    polynomial of degree 2e-2 modulo the field modulus.
    """
    if a.shape[1] != b.shape[0]:
        raise LinAlgError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    e = f.e
    if e == 1:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) & 1
    pa, pb = _bitplanes(a, e), _bitplanes(b, e)
    planes = []
    for k in range(2 * e - 1):
        acc = None
        for i in range(max(0, k - e + 1), min(k, e - 1) + 1):
            t = pa[i] @ pb[k - i]
            acc = t if acc is None else acc + t
        planes.append(acc.astype(np.int64) & 1)
    low = f.modulus_bits ^ (1 << e)
    for k in range(2 * e - 2, e - 1, -1):
        hi = planes[k]
        if not hi.any():
            continue
        # X^k = X^(k-e) * (modulus - X^e)
        for j in range(e):
            if (low >> j) & 1:
                planes[k - e + j] ^= hi
    out = planes[0].copy()
    for i in range(1, e):
        out |= planes[i] << i
    return out


def mat_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a ^ b


def scale(f: FieldSpec, c: int, m: np.ndarray) -> np.ndarray:
    return f.vmul(np.full_like(m, c), m)


def rref(f: FieldSpec, m: np.ndarray, ncols: int | None = None):
    """Reduced row echelon form.

    Pivots are taken at the first nonzero column (restricted to the first
    ``ncols`` columns when given).  Returns ``(R, pivots, T)`` where ``T``
    is the invertible transform with ``T @ m == R``.
    """
    check_entries(f, m)
    r = m.copy()
    rows, cols = r.shape
    t = identity(rows)
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == rows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        p = row + nz[0]
        if p != row:
            r[[row, p]] = r[[p, row]]
            t[[row, p]] = t[[p, row]]
        inv = f.inv(int(r[row, col]))
        if inv != 1:
            r[row] = f.vmul(inv, r[row])
            t[row] = f.vmul(inv, t[row])
        factors = r[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            fc = factors[hit][:, None]
            r[hit] ^= f.vmul(fc, r[row][None, :])
            t[hit] ^= f.vmul(fc, t[row][None, :])
        pivots.append(col)
        row += 1
    return r, pivots, t


def echelon(f: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Row basis of ``m`` in reduced echelon form (zero rows dropped)."""
    if m.shape[0] == 0:
        return m.copy()
    r, piv, _ = rref(f, m)
    return r[: len(piv)]


def pivots_of(basis: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in basis]


def is_echelon(basis: np.ndarray) -> bool:
    if basis.shape[0] == 0:
        return True
    piv = []
    for row in basis:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            return False
        piv.append(int(nz[0]))
    if any(b <= a for a, b in zip(piv, piv[1:])):
        return False
    for i, p in enumerate(piv):
        col = basis[:, p]
        if col[i] != 1 or np.count_nonzero(col) != 1:
            return False
    return True


def rank(f: FieldSpec, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(f, m)[1])


def rank_kernel(f: FieldSpec, m: np.ndarray):
    """Rank of ``m`` and an echelon basis of its left kernel ``{v : v m = 0}``."""
    rows = m.shape[0]
    if m.shape[1] == 0:
        return 0, identity(rows)
    r, piv, t = rref(f, m)
    k = len(piv)
    kernel = echelon(f, t[k:]) if k < rows else zeros(0, rows)
    return k, kernel


def left_kernel(f: FieldSpec, m: np.ndarray) -> np.ndarray:
    return rank_kernel(f, m)[1]


def right_kernel(f: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Basis (as rows) of ``{x : m x^T = 0}``."""
    return rank_kernel(f, m.T)[1]


def inverse(f: FieldSpec, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise LinAlgError(f"cannot invert non-square matrix {m.shape}")
    r, piv, t = rref(f, m)
    if len(piv) != n:
        raise LinAlgError("matrix is singular")
    return t


def is_invertible(f: FieldSpec, m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and rank(f, m) == m.shape[0]


def solve_linear(f: FieldSpec, coeffs: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """One solution ``X`` of ``X @ coeffs == rhs`` or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m, n = coeffs.shape
    if rhs.shape[1] != n:
        raise LinAlgError(f"shape mismatch: coeffs {coeffs.shape}, rhs {rhs.shape}")
    k = rhs.shape[0]
    if m == 0:
        return zeros(k, 0) if not rhs.any() else None
    # X coeffs = rhs  <=>  coeffs^T X^T = rhs^T; eliminate on [coeffs^T | rhs^T]
    aug = np.concatenate([coeffs.T, rhs.T], axis=1)
    r, piv, _ = rref(f, aug, ncols=m)
    rk = len(piv)
    if r[rk:, m:].any():
        return None
    x = zeros(m, k)
    for i, p in enumerate(piv):
        x[p] = r[i, m:]
    return x.T.copy()


def reduce_rows(f: FieldSpec, basis: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Residues of ``vecs`` modulo the row space of an echelon ``basis``."""
    if basis.shape[0] == 0 or vecs.shape[0] == 0:
        return vecs.copy()
    piv = pivots_of(basis)
    return vecs ^ matmul(f, vecs[:, piv], basis)


def in_span(f: FieldSpec, basis: np.ndarray, vecs: np.ndarray) -> bool:
    return not reduce_rows(f, basis, vecs).any()


def coords_in(basis: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Coordinates of vectors lying in the span of an echelon basis."""
    return vecs[:, pivots_of(basis)]


def span_sum(f: FieldSpec, *bases: np.ndarray) -> np.ndarray:
    stacked = np.concatenate(bases, axis=0)
    return echelon(f, stacked)


def intersect(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Echelon basis of the intersection of two row spaces."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return zeros(0, a.shape[1])
    # x a = y b  <=>  (x | y) [a; b] = 0
    ker = left_kernel(f, np.concatenate([a, b], axis=0))
    if ker.shape[0] == 0:
        return zeros(0, a.shape[1])
    return echelon(f, matmul(f, ker[:, : a.shape[0]], a))


def spin(f: FieldSpec, seeds: np.ndarray, action) -> np.ndarray:
    """Smallest subspace containing ``seeds`` and stable under ``action``."""
    for g in action:
        if g.shape != (seeds.shape[1], seeds.shape[1]):
            raise LinAlgError("action matrices must be square of the seed dimension")
    basis = echelon(f, seeds)
    frontier = basis
    while frontier.shape[0]:
        images = np.concatenate([matmul(f, frontier, g) for g in action], axis=0) if action else frontier[:0]
        new = echelon(f, reduce_rows(f, basis, images))
        if new.shape[0] == 0:
            break
        basis = span_sum(f, basis, new)
        frontier = new
    return basis


def quotient_basis(f: FieldSpec, sub: np.ndarray, ambient_dim: int):
    """Coset representatives and projection for ``K^n / sub``.

    Returns ``(lift, project)``: the rows of ``lift`` are standard basis
    vectors at the non-pivot columns of ``sub``; ``x @ project`` gives the
    quotient coordinates of ``x``, and ``lift @ project`` is the identity.
    """
    if sub.shape[0] and sub.shape[1] != ambient_dim:
        raise LinAlgError("subspace and ambient dimension disagree")
    if not is_echelon(sub):
        raise LinAlgError("subspace basis must be in reduced echelon form")
    piv = pivots_of(sub)
    free = [j for j in range(ambient_dim) if j not in set(piv)]
    lift = zeros(len(free), ambient_dim)
    lift[np.arange(len(free)), free] = 1
    project = zeros(ambient_dim, len(free))
    project[free, np.arange(len(free))] = 1
    for i, p in enumerate(piv):
        # e_p == sub_i - (rest of sub_i) modulo sub; char 2 drops the sign
        project[p] = sub[i, free]
    return lift, project


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def kron(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    prod = f.vmul(a[:, None, :, None], b[None, :, None, :])
    return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def mat_to_json(m: np.ndarray) -> dict:
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "entries": m.tolist()}


def mat_from_json(d: dict) -> np.ndarray:
    return as_mat(d["entries"], cols=d.get("cols")).reshape(d["rows"], d["cols"])
