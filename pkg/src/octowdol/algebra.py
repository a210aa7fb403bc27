"""Octonion and quaternion arithmetic on numpy arrays.

An octonion is stored as the last axis (length 8) of a float array, with
coefficients ordered on the basis ``1, t1, ..., t7``.  Quaternions use the
first four slots (``1, t1, t2, t3``) and embed into octonions with zeros in
``t4..t7``.  Every function broadcasts over leading axes.

Products are never reassociated: chains go through :func:`left_fold_product`.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

# Multiplication table of the imaginary units, row * column.  Each entry is
# (sign, basis index), index 0 being the real unit.
_UNIT_TABLE = (
    # t1       t2       t3       t4       t5       t6       t7
    ((-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)),  # t1
    ((-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)),  # t2
    ((1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)),  # t3
    ((-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)),  # t4
    ((1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)),  # t5
    ((1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)),  # t6
    ((-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)),  # t7
)


def _full_table() -> tuple[np.ndarray, np.ndarray]:
    index = np.zeros((8, 8), dtype=np.int64)
    sign = np.ones((8, 8), dtype=np.int64)
    for i in range(8):
        index[0, i] = i
        index[i, 0] = i
    for i in range(1, 8):
        for j in range(1, 8):
            s, k = _UNIT_TABLE[i - 1][j - 1]
            index[i, j] = k
            sign[i, j] = s
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


#: ``MUL_INDEX[i, j]`` is the basis index of ``e_i * e_j``.
#: ``MUL_SIGN[i, j]`` is its sign.
MUL_INDEX, MUL_SIGN = _full_table()

# For each output slot k, the eight (i, j, sign) triples that land on it.
_TERMS = [
    [(i, j, int(MUL_SIGN[i, j])) for i in range(8) for j in range(8) if MUL_INDEX[i, j] == k]
    for k in range(8)
]

_CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0])


class OctSplit(NamedTuple):
    """Quaternion pair ``(tilde, hat)`` with ``o = tilde + hat * t4``."""

    tilde: np.ndarray
    hat: np.ndarray


def basis(k: int) -> np.ndarray:
    """Return the basis octonion ``e_k`` (``k = 0`` is the real unit)."""
    if not 0 <= k <= 7:
        raise ValueError(f"basis index must be in 0..7, got {k}")
    e = np.zeros(8)
    e[k] = 1.0
    return e


def octonion(*coeffs: float) -> np.ndarray:
    """Build an octonion from up to eight leading coefficients."""
    if len(coeffs) > 8:
        raise ValueError("an octonion has eight coefficients")
    o = np.zeros(8)
    o[: len(coeffs)] = coeffs
    return o


def real(x) -> np.ndarray:
    """Embed real scalars (any shape) as octonions."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape + (8,))
    out[..., 0] = x
    return out


def embed_quaternion(q) -> np.ndarray:
    """Embed quaternions ``(..., 4)`` into octonions ``(..., 8)``."""
    q = np.asarray(q, dtype=float)
    if q.shape[-1] != 4:
        raise ValueError("quaternion arrays need a trailing axis of length 4")
    out = np.zeros(q.shape[:-1] + (8,))
    out[..., :4] = q
    return out


def check_axis(axis: int) -> int:
    """Validate an imaginary-unit selector (1..7)."""
    if isinstance(axis, bool) or int(axis) != axis or not 1 <= axis <= 7:
        raise ValueError(f"axis must be one of 1..7, got {axis!r}")
    return int(axis)


def oct_mul(a, b) -> np.ndarray:
    """Octonion product ``a * b``, expanded over the basis table."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = np.empty(shape + (8,))
    for k, terms in enumerate(_TERMS):
        acc = np.zeros(shape)
        for i, j, s in terms:
            if s > 0:
                acc = acc + a[..., i] * b[..., j]
            else:
                acc = acc - a[..., i] * b[..., j]
        out[..., k] = acc
    return out


def oct_conj(o) -> np.ndarray:
    """Conjugate: negate the seven imaginary coefficients."""
    return np.asarray(o, dtype=float) * _CONJ_SIGNS


def oct_norm2(o) -> np.ndarray:
    """Squared norm, the sum of squared coefficients."""
    o = np.asarray(o, dtype=float)
    return np.sum(o * o, axis=-1)


def oct_norm(o) -> np.ndarray:
    return np.sqrt(oct_norm2(o))


def oct_inv(o) -> np.ndarray:
    """Multiplicative inverse ``conj(o) / |o|^2``."""
    n2 = oct_norm2(o)
    if np.any(n2 == 0):
        raise ZeroDivisionError("octonion zero has no inverse")
    return oct_conj(o) / n2[..., None]


def right_mul_matrix(v) -> np.ndarray:
    """Matrix ``M`` with ``u * v == M @ u`` for every octonion ``u``."""
    v = np.asarray(v, dtype=float)
    m = np.zeros((8, 8))
    for i in range(8):
        for j in range(8):
            m[MUL_INDEX[i, j], i] += MUL_SIGN[i, j] * v[j]
    return m


def left_mul_matrix(v) -> np.ndarray:
    """Matrix ``M`` with ``v * u == M @ u``."""
    v = np.asarray(v, dtype=float)
    m = np.zeros((8, 8))
    for i in range(8):
        for j in range(8):
            m[MUL_INDEX[i, j], j] += MUL_SIGN[i, j] * v[i]
    return m


def oct_exp_axis(axis: int, theta) -> np.ndarray:
    """``cos(theta) + t_axis sin(theta)``, broadcast over ``theta``."""
    axis = check_axis(axis)
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape + (8,))
    out[..., 0] = np.cos(theta)
    out[..., axis] = np.sin(theta)
    return out


def oct_split(o) -> OctSplit:
    """Write ``o = a + b * t4`` with quaternions ``a`` and ``b``.

    From the table, ``(b0 + b1 t1 + b2 t2 + b3 t3) t4 = b0 t4 + b1 t5 + b2 t6 + b3 t7``,
    so the hat part is read straight off slots 4..7.
    """
    o = np.asarray(o, dtype=float)
    return OctSplit(o[..., :4].copy(), o[..., 4:].copy())


def oct_join(parts: OctSplit) -> np.ndarray:
    """Inverse of :func:`oct_split`: ``tilde + hat * t4``."""
    tilde, hat = parts
    return embed_quaternion(tilde) + oct_mul(embed_quaternion(hat), basis(4))


def left_fold_product(factors: Sequence) -> np.ndarray:
    """``((f1 * f2) * f3) * ...`` in the given order."""
    if len(factors) == 0:
        raise ValueError("empty product")
    acc = np.asarray(factors[0], dtype=float)
    for f in factors[1:]:
        acc = oct_mul(acc, f)
    return acc


def associator(a, b, c) -> np.ndarray:
    """``(a b) c - a (b c)``; zero exactly when the triple associates."""
    return oct_mul(oct_mul(a, b), c) - oct_mul(a, oct_mul(b, c))


def quat_mul(p, q) -> np.ndarray:
    """Quaternion product via the octonion table restricted to ``1, t1, t2, t3``."""
    return oct_mul(embed_quaternion(p), embed_quaternion(q))[..., :4]


def quat_conj(q) -> np.ndarray:
    return np.asarray(q, dtype=float) * _CONJ_SIGNS[:4]


def cayley_dickson_table() -> tuple[np.ndarray, np.ndarray]:
    """Rebuild the basis table from the doubling rule.

    Octonions are pairs ``(p, q)`` of quaternions standing for ``p + q t4`` and
    ``(p, q)(r, s) = (p r - conj(s) q, s p + q conj(r))``.  Returns
    ``(index, sign)`` arrays shaped like :data:`MUL_INDEX` / :data:`MUL_SIGN`.
    """
    # Quaternion units 1, i, j, k are t0..t3; Hamilton's rules ij = k etc.
    qtab = {
        (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def qmul(x, y):
        out = np.zeros(4)
        for i in range(4):
            for j in range(4):
                if x[i] == 0 or y[j] == 0:
                    continue
                if i == 0 or j == 0:
                    s, k = 1, i + j
                else:
                    s, k = qtab[(i, j)]
                out[k] += s * x[i] * y[j]
        return out

    def qconj(x):
        return x * np.array([1.0, -1.0, -1.0, -1.0])

    index = np.zeros((8, 8), dtype=np.int64)
    sign = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            ea, eb = np.zeros(8), np.zeros(8)
            ea[a], eb[b] = 1.0, 1.0
            p, q = ea[:4], ea[4:]
            r, s = eb[:4], eb[4:]
            prod = np.concatenate([qmul(p, r) - qmul(qconj(s), q), qmul(s, p) + qmul(q, qconj(r))])
            (k,) = np.nonzero(prod)[0]
            index[a, b] = k
            sign[a, b] = int(prod[k])
    return index, sign


def tau4_identities(a, b) -> dict[str, float]:
    """Residuals of the six t4 identities for quaternions ``a``, ``b``.

    1. ``t4 a = conj(a) t4``          2. ``t4 (a t4) = -conj(a)``
    3. ``(a t4) t4 = -a``             4. ``a (b t4) = (b a) t4``
    5. ``(a t4) b = (a conj(b)) t4``  6. ``(a t4)(b t4) = -conj(b) a``
    """
    t4 = basis(4)
    A = embed_quaternion(a)
    B = embed_quaternion(b)
    Ac = embed_quaternion(quat_conj(a))
    Bc = embed_quaternion(quat_conj(b))
    at4 = oct_mul(A, t4)
    bt4 = oct_mul(B, t4)
    pairs = {
        "t4a": (oct_mul(t4, A), oct_mul(Ac, t4)),
        "t4(at4)": (oct_mul(t4, at4), -Ac),
        "(at4)t4": (oct_mul(at4, t4), -A),
        "a(bt4)": (oct_mul(A, bt4), oct_mul(oct_mul(B, A), t4)),
        "(at4)b": (oct_mul(at4, B), oct_mul(oct_mul(A, Bc), t4)),
        "(at4)(bt4)": (oct_mul(at4, bt4), -oct_mul(Bc, A)),
    }
    return {k: float(np.max(np.abs(lhs - rhs))) for k, (lhs, rhs) in pairs.items()}


def tau4_identities_check(a, b, tol: float = 1e-14) -> bool:
    """True iff all six identities hold for ``a``, ``b`` to ``tol``."""
    return all(r <= tol for r in tau4_identities(a, b).values())
