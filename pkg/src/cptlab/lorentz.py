"""Spacetimes, the Lorentz group and its four-fold 4D cover.

A signature (p, q) fixes the metric diag(+1 x p, -1 x q).  Group elements are
real isometry matrices tagged by connected component; time orientation for
p > 1 means orientation of the timelike subspace, read off from the sign of
the determinant of the timelike-timelike block.

The four-dimensional covers are matrix pairs (A, B) with det A = det B = +-1,
projecting to the complex Lorentz group through the hermitian-matrix encoding
<x> of a spacetime vector.  tau = (-1,-1) and I = (i,-i) are the distinguished
central elements, I^2 = tau.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .scalars import QI, as_scalar, conj, is_exact

PROPER_ORTHO = "proper orthochronous"
IMPROPER_ORTHO = "improper orthochronous"
PROPER_ANTI = "proper non-orthochronous"
IMPROPER_ANTI = "improper non-orthochronous"

COVER_ORTHO = "cover orthochronous"              # (A, conj A), det +1
COVER_ANTI_A = "cover non-orthochronous (a)"     # (A, -conj A), det +1
COVER_ANTI = "cover non-orthochronous"           # (A, -conj A), det -1
COVER_ORTHO_B = "cover orthochronous (b)"        # (A, conj A), det -1
COVER_COMPLEX = "complex"


class GroupError(ValueError):
    """Raised for arguments outside the declared group."""


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("need at least one timelike and one spacelike direction")

    @property
    def dim(self) -> int:
        return self.p + self.q

    @property
    def eta_diag(self) -> tuple[int, ...]:
        return tuple([1] * self.p + [-1] * self.q)

    def eta_matrix(self):
        return tuple(tuple(QI(self.eta_diag[i] if i == j else 0)
                           for j in range(self.dim)) for i in range(self.dim))

    def __str__(self):
        return "(%d,%d)" % (self.p, self.q)


@dataclass(frozen=True)
class LorentzElement:
    matrix: object  # exact QI matrix or numpy array
    component: str
    signature: Signature

    @property
    def exact(self) -> bool:
        return la.is_exact_matrix(self.matrix)

    def compose(self, other: "LorentzElement") -> "LorentzElement":
        m = la.mat_mul(self.matrix, other.matrix)
        return element(m, self.signature)

    def inverse(self) -> "LorentzElement":
        return element(la.mat_inv(self.matrix), self.signature)

    @property
    def time_reversing(self) -> bool:
        return self.component in (PROPER_ANTI, IMPROPER_ANTI)


def is_isometry(m, sig: Signature, tol: float = 1e-9) -> bool:
    eta = sig.eta_matrix()
    lhs = la.mat_mul(la.mat_transpose(m), la.mat_mul(eta, m))
    return la.mat_equal(lhs, eta, 0.0 if la.is_exact_matrix(m) else tol)


def classify_component(m, sig: Signature, tol: float = 1e-9) -> str:
    """Component tag of an eta-isometry: properness by det, time sense by the
    orientation of the timelike block."""
    if not is_isometry(m, sig, tol):
        raise GroupError("matrix is not an isometry of the metric")
    p = sig.p
    if la.is_exact_matrix(m):
        det = la.mat_det(m)
        tblock = tuple(tuple(m[i][j] for j in range(p)) for i in range(p))
        tdet = la.mat_det(tblock)
        proper = det == QI(1)
        ortho = tdet.re > 0
    else:
        det = np.linalg.det(np.real(m))
        tdet = np.linalg.det(np.real(m)[:p, :p])
        if abs(abs(det) - 1.0) > 1e-6 or abs(tdet) < 1e-9:
            raise GroupError("component classification is numerically ambiguous")
        proper = det > 0
        ortho = tdet > 0
    if proper:
        return PROPER_ORTHO if ortho else PROPER_ANTI
    return IMPROPER_ORTHO if ortho else IMPROPER_ANTI


def element(m, sig: Signature, tol: float = 1e-9) -> LorentzElement:
    if la.is_exact_matrix(m):
        m = la.qi_matrix(m)
    else:
        m = np.asarray(m)
        if np.iscomplexobj(m):
            if np.max(np.abs(m.imag)) > tol:
                raise GroupError("real Lorentz element has complex entries")
            m = m.real.copy()
    return LorentzElement(m, classify_component(m, sig, tol), sig)


def identity_element(sig: Signature) -> LorentzElement:
    return LorentzElement(la.identity(sig.dim), PROPER_ORTHO, sig)


def pt_representative(sig: Signature) -> LorentzElement:
    """Exact integer element of the proper non-orthochronous component.

    Total reflection when it lies there (even dimension, odd p); otherwise the
    reflection of the first timelike and first spacelike axes.
    """
    d = sig.dim
    if d % 2 == 0 and sig.p % 2 == 1:
        m = tuple(tuple(QI(-1 if i == j else 0) for j in range(d)) for i in range(d))
    else:
        diag = [1] * d
        diag[0] = -1
        diag[sig.p] = -1
        m = tuple(tuple(QI(diag[i] if i == j else 0) for j in range(d)) for i in range(d))
    return LorentzElement(m, PROPER_ANTI, sig)


def lie_basis(sig: Signature) -> list:
    """Integer basis of the isometry Lie algebra: f eta = -eta f^T."""
    d = sig.dim
    eta = sig.eta_diag
    basis = []
    for a in range(d):
        for b in range(a + 1, d):
            m = [[QI(0)] * d for _ in range(d)]
            m[a][b] = QI(eta[b])
            m[b][a] = QI(-eta[a])
            basis.append(tuple(tuple(row) for row in m))
    return basis


def expm(m: np.ndarray, terms: int = 40) -> np.ndarray:
    """Matrix exponential by Taylor series with scaling and squaring."""
    m = np.asarray(m, dtype=float)
    norm = np.max(np.abs(m)) * m.shape[0]
    s = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    t = m / (2 ** s)
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, terms):
        term = term @ t / k
        out = out + term
        if np.max(np.abs(term)) < 1e-18:
            break
    for _ in range(s):
        out = out @ out
    return out


def sample_proper_ortho(seed, sig: Signature, scale: float = 0.6) -> LorentzElement:
    """Deterministic sample of the identity component: exp of a random
    Lie-algebra combination."""
    rng = np.random.default_rng(seed)
    basis = lie_basis(sig)
    coeffs = rng.normal(0.0, scale, size=len(basis))
    x = np.zeros((sig.dim, sig.dim))
    for c, f in zip(coeffs, basis):
        x = x + c * np.array([[float(v.re) for v in row] for row in f])
    g = expm(x)
    return LorentzElement(g, PROPER_ORTHO, sig)


def lie_matrix_float(f) -> np.ndarray:
    return np.array([[float(v.re) for v in row] for row in f])


# -- four-dimensional covers ------------------------------------------------

SIG13 = Signature(1, 3)


def _mat2(rows):
    return tuple(tuple(as_scalar(x) if is_exact(x) else x for x in row) for row in rows)


@dataclass(frozen=True)
class CoverElement:
    """Element (A, B) of the four-fold cover of the proper complex Lorentz
    group in four dimensions; det A = det B in {+1, -1}."""

    a: object  # 2x2 exact QI matrix or numpy array
    b: object

    @property
    def exact(self) -> bool:
        return la.is_exact_matrix(self.a)

    def compose(self, other: "CoverElement") -> "CoverElement":
        return CoverElement(la.mat_mul(self.a, other.a), la.mat_mul(self.b, other.b))

    def inverse(self) -> "CoverElement":
        return CoverElement(la.mat_inv(self.a), la.mat_inv(self.b))

    def neg(self) -> "CoverElement":
        return CoverElement(la.mat_neg(self.a), la.mat_neg(self.b))

    @property
    def component(self) -> str:
        return classify_cover(self)

    @property
    def time_reversing(self) -> bool:
        return self.component in (COVER_ANTI, COVER_ANTI_A)


def cover_identity() -> CoverElement:
    return CoverElement(la.identity(2), la.identity(2))


def cover_tau() -> CoverElement:
    return CoverElement(la.mat_scale(QI(-1), la.identity(2)),
                        la.mat_scale(QI(-1), la.identity(2)))


def cover_I() -> CoverElement:
    return CoverElement(la.mat_scale(QI(0, 1), la.identity(2)),
                        la.mat_scale(QI(0, -1), la.identity(2)))


def total_reflection_lift() -> CoverElement:
    """The exact lift (i, i) of total reflection in the time-reversing sheet."""
    return CoverElement(la.mat_scale(QI(0, 1), la.identity(2)),
                        la.mat_scale(QI(0, 1), la.identity(2)))


def classify_cover(c: CoverElement, tol: float = 1e-9) -> str:
    da = la.mat_det(c.a)
    db = la.mat_det(c.b)
    if c.exact:
        if da != db or (da != QI(1) and da != QI(-1)):
            return COVER_COMPLEX
        plus = la.mat_equal(c.b, la.mat_conj(c.a))
        minus = la.mat_equal(c.b, la.mat_neg(la.mat_conj(c.a)))
    else:
        if abs(da - db) > tol or abs(abs(da) - 1) > tol or abs(da.imag) > tol:
            return COVER_COMPLEX
        da = da.real
        plus = la.mat_equal(c.b, la.mat_conj(c.a), tol)
        minus = la.mat_equal(c.b, -np.conj(la.to_numpy(c.a)), tol)
    det_one = (da == QI(1)) if c.exact else da > 0
    if plus:
        return COVER_ORTHO if det_one else COVER_ORTHO_B
    if minus:
        return COVER_ANTI_A if det_one else COVER_ANTI
    return COVER_COMPLEX


def bracket_columns():
    """<e_mu> for the orthonormal basis of (1,3) Minkowski space."""
    one, i = QI(1), QI(0, 1)
    z = QI(0)
    return [
        _mat2([[one, z], [z, one]]),       # x0
        _mat2([[z, one], [one, z]]),       # x1
        _mat2([[z, -i], [i, z]]),          # x2
        _mat2([[one, z], [z, -one]]),      # x3
    ]


def unbracket(h):
    """Inverse of the <x> encoding, valid for any complex 2x2 matrix."""
    half = QI(Fraction(1, 2))
    if isinstance(h, np.ndarray):
        a, b, c, d = h[0, 0], h[0, 1], h[1, 0], h[1, 1]
        return np.array([(a + d) / 2, (b + c) / 2, 1j * (b - c) / 2, (a - d) / 2])
    a, b = h[0]
    c, d = h[1]
    return ((a + d) * half, (b + c) * half, QI(0, 1) * (b - c) * half, (a - d) * half)


def cover_project_complex(c: CoverElement):
    """The projection pi(A, B) as a (generally complex) 4x4 matrix."""
    cols = []
    bt = la.mat_transpose(c.b)
    for h in bracket_columns():
        if not c.exact:
            h = la.to_numpy(h)
        cols.append(unbracket(la.mat_mul(c.a, la.mat_mul(h, bt))))
    if c.exact:
        return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
    return np.array(cols).T


def cover_project(c: CoverElement, tol: float = 1e-9) -> LorentzElement:
    """Projection to a real Lorentz element; rejects properly complex pairs."""
    m = cover_project_complex(c)
    if c.exact:
        if any(x.im != 0 for row in m for x in row):
            raise GroupError("pair projects outside the real Lorentz group")
        m = tuple(tuple(QI(x.re) for x in row) for row in m)
        return element(m, SIG13)
    if np.max(np.abs(np.imag(m))) > tol:
        raise GroupError("pair projects outside the real Lorentz group")
    return element(np.real(m), SIG13)


def cover_conjugate(c: CoverElement) -> CoverElement:
    """The conjugation of the four-fold cover: (A, B) -> (conj B, conj A)."""
    return CoverElement(la.mat_conj(c.b), la.mat_conj(c.a))


def sample_sl2(rng) -> np.ndarray:
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) > 1e-3:
            return m / np.sqrt(det)


def sample_cover(seed, component: str = COVER_ORTHO) -> CoverElement:
    """Seeded sample of a cover component (or of the full complex group)."""
    rng = np.random.default_rng(seed)
    a = sample_sl2(rng)
    if component == COVER_ORTHO:
        return CoverElement(a, np.conj(a))
    if component == COVER_ANTI_A:
        return CoverElement(a, -np.conj(a))
    if component == COVER_ANTI:
        return CoverElement(1j * a, 1j * np.conj(a))
    if component == COVER_COMPLEX:
        return CoverElement(a, sample_sl2(rng))
    raise ValueError("cannot sample component %r" % component)


# -- Galilean spacetime ------------------------------------------------------

@dataclass(frozen=True)
class Galilean:
    """Galilean spacetime: a time line over a Euclidean space, coordinate 0
    being time.  Isometries scale time by +-1, rotate or reflect space, and
    shear by boosts."""

    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("Galilean spacetime needs dim >= 2")


def galilean_classify(m, g: Galilean, tol: float = 1e-9) -> str:
    d = g.dim
    exact = la.is_exact_matrix(m)
    top = [m[0][j] for j in range(d)] if exact else list(np.asarray(m)[0])
    s = top[0]
    rest_zero = all((x == QI(0)) if exact else abs(x) <= tol for x in top[1:])
    if not rest_zero:
        raise GroupError("not a Galilean automorphism: time is not preserved as a function")
    if exact:
        if s != QI(1) and s != QI(-1):
            raise GroupError("time factor must be +-1")
        s_pos = s == QI(1)
        spatial = tuple(tuple(m[i][j] for j in range(1, d)) for i in range(1, d))
        rdet = la.mat_det(spatial)
        r_pos = rdet.re > 0
        ident = la.mat_mul(la.mat_transpose(spatial), spatial)
        if ident != la.identity(d - 1):
            raise GroupError("spatial block is not orthogonal")
    else:
        arr = np.asarray(m, dtype=float)
        if abs(abs(s) - 1) > tol:
            raise GroupError("time factor must be +-1")
        s_pos = s > 0
        spatial = arr[1:, 1:]
        if np.max(np.abs(spatial.T @ spatial - np.eye(d - 1))) > 1e-6:
            raise GroupError("spatial block is not orthogonal")
        r_pos = np.linalg.det(spatial) > 0
    if s_pos:
        return PROPER_ORTHO if r_pos else IMPROPER_ORTHO
    return PROPER_ANTI if not r_pos else IMPROPER_ANTI


def galilean_sample(seed, g: Galilean, scale: float = 0.7) -> np.ndarray:
    """Random element of the Galilean identity component: rotation + boost."""
    rng = np.random.default_rng(seed)
    d = g.dim
    x = np.zeros((d - 1, d - 1))
    for i in range(d - 1):
        for j in range(i + 1, d - 1):
            c = rng.normal(0.0, scale)
            x[i, j] = c
            x[j, i] = -c
    rot = expm(x)
    out = np.eye(d)
    out[1:, 1:] = rot
    out[1:, 0] = rng.normal(0.0, scale, size=d - 1)
    return out


def galilean_time_reversal(g: Galilean, alpha_spatial=None):
    """Exact integer time-reversing proper element: t -> -t plus one spatial
    reflection (so the overall parity times time reversal is proper)."""
    d = g.dim
    diag = [1] * d
    diag[0] = -1
    diag[1] = -1
    return tuple(tuple(QI(diag[i] if i == j else 0) for j in range(d))
                 for i in range(d))
