"""Complex Clifford algebras, the Pin group, and the group-axiom evidence.

The Clifford algebra of a signature imposes vw + wv = 2 eta(v, w) on the
free algebra of complexified spacetime.  Products of unit vectors form the
Pin group, covering the complex Lorentz group four-to-one through the
twisted reflection map; the distinguished elements are tau = -1 and I = i.

verify_axioms gathers machine-checkable evidence for the five group facts
behind the invariance theorems, and reports the documented failures for the
two-dimensional and Galilean cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .lorentz import (PROPER_ANTI, PROPER_ORTHO, Galilean, GroupError,
                      Signature, classify_component, expm, galilean_sample,
                      lie_basis, lie_matrix_float, pt_representative,
                      sample_proper_ortho)
from .scalars import QI, as_scalar, conj, is_zero


def _blade_insert(blade: tuple, x: int, eta) -> tuple:
    """Multiply the sorted blade by the generator e_x on the right."""
    greater = sum(1 for y in blade if y > x)
    sign = -1 if greater % 2 else 1
    if x in blade:
        out = tuple(y for y in blade if y != x)
        return sign * eta[x], out
    out = tuple(sorted(blade + (x,)))
    return sign, out


class CliffordElement:
    """Finite combination of basis blades e_S, S a subset of directions."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: Signature, coeffs: dict | None = None):
        self.sig = sig
        self.coeffs = {}
        for blade, c in (coeffs or {}).items():
            c = as_scalar(c)
            if is_zero(c):
                continue
            self.coeffs[tuple(blade)] = c

    @classmethod
    def scalar(cls, sig: Signature, c) -> "CliffordElement":
        return cls(sig, {(): as_scalar(c)})

    @classmethod
    def vector(cls, sig: Signature, comps) -> "CliffordElement":
        return cls(sig, {(k,): as_scalar(c) for k, c in enumerate(comps)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            acc = out.get(b)
            acc = c if acc is None else acc + c
            if is_zero(acc):
                out.pop(b, None)
            else:
                out[b] = acc
        return CliffordElement(self.sig, out)

    def __neg__(self):
        return CliffordElement(self.sig, {b: -c for b, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = as_scalar(c)
        return CliffordElement(self.sig, {b: v * c for b, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scaled(other)
        eta = self.sig.eta_diag
        out: dict = {}
        for b1, c1 in self.coeffs.items():
            for b2, c2 in other.coeffs.items():
                blade = b1
                factor = c1 * c2
                for x in b2:
                    s, blade = _blade_insert(blade, x, eta)
                    factor = factor * s
                acc = out.get(blade)
                acc = factor if acc is None else acc + factor
                if is_zero(acc):
                    out.pop(blade, None)
                else:
                    out[blade] = acc
        return CliffordElement(self.sig, out)

    def conjugate(self) -> "CliffordElement":
        return CliffordElement(self.sig, {b: conj(c) for b, c in self.coeffs.items()})

    def reverse(self) -> "CliffordElement":
        out = {}
        for b, c in self.coeffs.items():
            k = len(b)
            sign = -1 if (k * (k - 1) // 2) % 2 else 1
            out[b] = c * sign
        return CliffordElement(self.sig, out)

    def spinor_norm(self):
        """reverse(g) * g; a scalar of modulus one on the Pin group, +1 on
        the identity-connected component of the even part."""
        n = (self.reverse() * self)
        return n.coeffs.get((), QI(0))

    def scalar_part(self):
        return self.coeffs.get((), QI(0))

    def is_scalar(self, tol: float = 1e-9) -> bool:
        return all(b == () or _small(c, tol) for b, c in self.coeffs.items())

    def approx_eq(self, other, tol: float = 1e-9) -> bool:
        blades = set(self.coeffs) | set(other.coeffs)
        for b in blades:
            d = self.coeffs.get(b, QI(0)) - other.coeffs.get(b, QI(0))
            if not _small(d, tol):
                return False
        return True

    def norm_inf(self) -> float:
        out = 0.0
        for c in self.coeffs.values():
            mag = abs(c.to_complex()) if isinstance(c, QI) else abs(c)
            out = max(out, mag)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "<cliff 0>"
        bits = []
        for b in sorted(self.coeffs, key=lambda t: (len(t), t)):
            name = "".join("e%d" % k for k in b) or "1"
            bits.append("(%s)%s" % (self.coeffs[b], name))
        return "<cliff %s>" % " + ".join(bits)


def _small(c, tol: float) -> bool:
    mag = abs(c.to_complex()) if isinstance(c, QI) else abs(c)
    return mag <= tol


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.sig != b.sig:
        raise GroupError("Clifford factors from different signatures")
    return a * b


def eta_c(sig: Signature, v, w):
    """The complex-bilinear extension of the metric."""
    out = as_scalar(0)
    for k, s in enumerate(sig.eta_diag):
        out = out + as_scalar(v[k]) * as_scalar(w[k]) * s
    return out


def reflection_matrix(sig: Signature, v):
    """pi(v): x -> 2 eta(x, v)/eta(v, v) v - x, as a matrix."""
    d = sig.dim
    n = eta_c(sig, v, v)
    if is_zero(n, 1e-12):
        raise GroupError("null factor vector")
    exact = all(isinstance(as_scalar(x), QI) for x in v)
    if exact:
        cols = []
        for k in range(d):
            ek = [QI(1 if t == k else 0) for t in range(d)]
            coeff = QI(2) * eta_c(sig, ek, v) / n
            col = [coeff * as_scalar(v[t]) - (QI(1) if t == k else QI(0))
                   for t in range(d)]
            cols.append(col)
        return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    vv = np.asarray([x.to_complex() if isinstance(x, QI) else complex(x)
                     for x in (as_scalar(y) for y in v)], dtype=complex)
    eta = np.diag([float(s) for s in sig.eta_diag])
    nn = complex(n.to_complex() if isinstance(n, QI) else n)
    return 2.0 * np.outer(vv, eta @ vv) / nn - np.eye(d)


def pin_project(sig: Signature, factors):
    """Projection of a product of unit vectors: composed reflections."""
    d = sig.dim
    out = None
    for v in factors:
        m = reflection_matrix(sig, v)
        out = m if out is None else la.mat_mul(out, m)
    if out is None:
        return la.identity(d)
    return out


def pin_element(sig: Signature, factors) -> CliffordElement:
    out = CliffordElement.scalar(sig, 1)
    for v in factors:
        out = out * CliffordElement.vector(sig, v)
    return out


def unit_vector(sig: Signature, raw) -> list:
    """Normalise a non-null complex vector to eta(v,v) = 1 exactly."""
    n = eta_c(sig, raw, raw)
    nn = complex(n.to_complex() if isinstance(n, QI) else n)
    if abs(nn) < 1e-9:
        raise GroupError("null factor vector")
    scale = 1.0 / np.sqrt(nn)
    return [complex(as_scalar(x)) * scale for x in raw]


def _random_real_unit(rng, sig: Signature, timelike: bool):
    d = sig.dim
    p = sig.p
    while True:
        v = rng.normal(size=d)
        if timelike:
            v[p:] *= 0.2
        else:
            v[:p] *= 0.2
        n = sum(sig.eta_diag[k] * v[k] * v[k] for k in range(d))
        if timelike and n > 1e-3:
            return [complex(x) for x in v / np.sqrt(n)]
        if not timelike and n < -1e-3:
            return [complex(x) for x in v / np.sqrt(-n)]


# -- axiom evidence -----------------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    passed: bool | None          # None = not applicable
    detail: str
    witnesses: list = dc_field(default_factory=list)

    def to_json(self):
        verdict = "n/a" if self.passed is None else ("pass" if self.passed else "fail")
        return {"axiom": self.name, "verdict": verdict, "detail": self.detail,
                "witnesses": self.witnesses}


@dataclass
class AxiomReport:
    spacetime: str
    results: list
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.passed is not None)

    def to_json(self):
        return {"spacetime": self.spacetime, "samples": self.samples,
                "seed": self.seed,
                "axioms": [r.to_json() for r in self.results],
                "verdict": "pass" if self.passed else "fail"}

    def to_text(self) -> str:
        lines = ["axiom evidence for %s (samples=%d, seed=%d)"
                 % (self.spacetime, self.samples, self.seed)]
        for r in self.results:
            tag = "n/a " if r.passed is None else ("PASS" if r.passed else "FAIL")
            lines.append("  [%s] %s: %s" % (tag, r.name, r.detail))
        lines.append("overall: %s" % ("pass" if self.passed else "fail"))
        return "\n".join(lines)


def _definite_plane(sig: Signature):
    if sig.p >= 2:
        return (0, 1)
    if sig.q >= 2:
        return (sig.p, sig.p + 1)
    return None


def _check_pt1(sig: Signature, samples: int, seed: int) -> AxiomResult:
    rng = np.random.default_rng(seed)
    bad = []
    for k in range(samples):
        g = sample_proper_ortho(int(rng.integers(1 << 30)), sig)
        if g.component != PROPER_ORTHO:
            bad.append("sample %d left the identity component" % k)
        # scaling path to the identity stays in one component
        x = np.zeros((sig.dim, sig.dim))
    basis = lie_basis(sig)
    coeffs = rng.normal(0.0, 0.7, size=len(basis))
    x = sum(c * lie_matrix_float(f) for c, f in zip(coeffs, basis))
    for t in np.linspace(0.0, 1.0, 9):
        if classify_component(expm(t * x), sig) != PROPER_ORTHO:
            bad.append("path exp(tX) leaves the identity component")
    g1 = sample_proper_ortho(seed + 1, sig).matrix
    g2 = sample_proper_ortho(seed + 2, sig).matrix
    if classify_component(g1 @ g2, sig) != PROPER_ORTHO:
        bad.append("product of samples leaves the component")
    ok = not bad
    return AxiomResult("PT-1 (identity component is connected)", ok,
                       "exp paths and products stay orthochronous proper"
                       if ok else "; ".join(bad))


def _check_lie_complexification(sig: Signature) -> bool:
    """The complex solutions of f eta = -eta f^T have the same dimension as
    the real Lie algebra, so Lie(complexification) = complexified Lie."""
    d = sig.dim
    eta = sig.eta_diag
    rows = []
    for i in range(d):
        for j in range(d):
            row = [QI(0)] * (d * d)
            # (f eta + eta f^T)_{ij} = f_ij eta_j + eta_i f_ji
            row[i * d + j] = row[i * d + j] + QI(eta[j])
            row[j * d + i] = row[j * d + i] + QI(eta[i])
            rows.append(row)
    return la.nullspace_dim(rows) == d * (d - 1) // 2


def _rotation_lift_path(sig: Signature, plane, steps: int = 16):
    """Discretised lift of the definite-plane rotation loop: g(t) = cos t +
    sin t e_i e_j, realised as products of two real unit vectors."""
    i, j = plane
    eta_i = sig.eta_diag[i]
    path = []
    for t in np.linspace(0.0, np.pi, steps):
        w = [0.0] * sig.dim
        w[i] = eta_i * float(np.cos(t))
        w[j] = float(np.sin(t))
        v = [0.0] * sig.dim
        v[i] = 1.0
        factors = [v, w]
        path.append((t, factors, pin_element(sig, factors)))
    return path


def _check_pt2(sig: Signature, seed: int):
    details = []
    ok = True
    if not _check_lie_complexification(sig):
        ok = False
        details.append("complex isometry Lie algebra is not the complexified real one")
    plane = _definite_plane(sig)
    if plane is None:
        ok = False
        details.append(
            "no definite rotation plane: the preimage of the orthochronous group "
            "in the identity component of the Pin cover splits, its "
            "complexification is an infinite cover, and the proper group does "
            "not embed in it")
        return AxiomResult(
            "PT-2 (proper group embeds in the complexification)", False,
            "; ".join(details)), False
    # lift of the rotation loop connects 1 to tau inside lifts of L^up_+
    path = _rotation_lift_path(sig, plane)
    tau = CliffordElement.scalar(sig, -1)
    prev = None
    for t, factors, g in path:
        if abs(complex(_to_c(g.spinor_norm())) - 1.0) > 1e-9:
            ok = False
            details.append("path leaves the identity component of the even part")
            break
        proj = pin_project(sig, factors)
        if classify_component(np.real(la.to_numpy(proj)), sig) != PROPER_ORTHO:
            ok = False
            details.append("path projection leaves the orthochronous group")
            break
        if prev is not None and (g - prev).norm_inf() > 0.5:
            ok = False
            details.append("lift path is discontinuous")
            break
        prev = g
    end_is_tau = prev is not None and (prev - tau).norm_inf() < 1e-9
    if not end_is_tau:
        ok = False
        details.append("rotation loop lift does not reach tau")
    if ok:
        details.append(
            "rotation-plane loop lifts to a path from 1 to tau, so the double "
            "cover over the orthochronous group is nontrivial and the matrix "
            "group realises the complexification")
    return AxiomResult("PT-2 (proper group embeds in the complexification)",
                       ok, "; ".join(details)), ok


def _to_c(x):
    return x.to_complex() if isinstance(x, QI) else complex(x)


def _real_pin_over_pt(sig: Signature):
    """Real unit-vector factors projecting onto the exact PT representative."""
    d = sig.dim
    rep = pt_representative(sig)
    if all(rep.matrix[i][i] == QI(-1) for i in range(d)):
        factors = []
        for k in range(d):
            v = [0.0] * d
            v[k] = 1.0
            factors.append(v)
    else:
        v0 = [0.0] * d
        v0[0] = 1.0
        vp = [0.0] * d
        vp[sig.p] = 1.0
        factors = [v0, vp]
    return rep, factors


def _check_pt3(sig: Signature, pt2_ok: bool, samples: int, seed: int) -> AxiomResult:
    rep, factors = _real_pin_over_pt(sig)
    proj = np.real(la.to_numpy(pin_project(sig, factors)))
    covers = np.max(np.abs(proj - la.to_numpy(rep.matrix).real)) < 1e-9
    g = pin_element(sig, factors)
    fixed = (g - g.conjugate()).norm_inf() < 1e-12
    if not pt2_ok:
        return AxiomResult(
            "PT-3 (proper group fixed by conjugation)", False,
            "conjugation-fixed elements found only in the orthochronous group: "
            "with the complexification an infinite cover, its conjugation-fixed "
            "subgroup projects onto the orthochronous component alone")
    rng = np.random.default_rng(seed)
    bad = []
    if not (covers and fixed):
        bad.append("no real Pin element over the PT representative")
    hits = set()
    for k in range(samples):
        kinds = [rng.random() < 0.5 for _ in range(2)]
        if sig.p < 2:
            kinds = [False, False] if rng.random() < 0.5 else [True, False]
        fs = [_random_real_unit(rng, sig, timelike=kind) for kind in kinds]
        el = pin_element(sig, fs)
        if (el - el.conjugate()).norm_inf() > 1e-9:
            bad.append("real product is not conjugation-fixed")
            continue
        proj = la.to_numpy(pin_project(sig, fs))
        if np.max(np.abs(proj.imag)) > 1e-9:
            bad.append("real product projects outside the real group")
            continue
        hits.add(classify_component(proj.real, sig))
    ok = not bad and covers and fixed
    detail = ("conjugation-fixed Pin elements cover the exact PT representative "
              "and sampled elements of both proper components (%s)"
              % ", ".join(sorted(hits)))
    return AxiomResult("PT-3 (proper group fixed by conjugation)", ok,
                       detail if ok else "; ".join(bad))


def _kernel_is_scalars(sig: Signature) -> bool:
    """Exact check: the even-subalgebra commutant of all vectors is the
    scalars, so the preimage of the identity in the Pin group is the unit
    scalars with spinor norm +-1, i.e. {1, -1, i, -i}."""
    d = sig.dim
    for r in range(2, d + 1, 2):
        for blade in itertools.combinations(range(d), r):
            el = CliffordElement(sig, {tuple(blade): QI(1)})
            for k in range(d):
                ek = CliffordElement(sig, {(k,): QI(1)})
                if ((el * ek) - (ek * el)).norm_inf() > 0:
                    break
            else:
                return False
    return True


def _check_pt4(sig: Signature, samples: int, seed: int) -> AxiomResult:
    details = []
    ok = True
    if not _kernel_is_scalars(sig):
        ok = False
        details.append("non-scalar even element commutes with all vectors")
    else:
        details.append("preimage of the identity is exactly {1,-1,i,-i}")
    # the four kernel elements as explicit unit-vector products
    d = sig.dim
    e0 = [0.0] * d
    e0[0] = 1.0
    ej = [0.0] * d
    ej[sig.p] = 1.0 if sig.q else None
    ie0 = [1j * x for x in e0]
    kernel_products = {
        "1": [e0, e0],
        "-1": [ej, ej],
        "i": [e0, ie0],
        "-i": [e0, [-x for x in ie0]],
    }
    for label, fs in kernel_products.items():
        el = pin_element(sig, fs)
        proj = la.to_numpy(pin_project(sig, fs))
        want = CliffordElement.scalar(sig, {"1": 1, "-1": -1, "i": 1j, "-i": -1j}[label])
        if not el.approx_eq(want) or np.max(np.abs(proj - np.eye(d))) > 1e-9:
            ok = False
            details.append("kernel element %s is not a unit-vector product over 1"
                           % label)
    # sampled four-to-one behaviour
    rng = np.random.default_rng(seed)
    for k in range(max(3, samples // 10)):
        fs = [unit_vector(sig, rng.normal(size=d) + 1j * rng.normal(size=d))
              for _ in range(2)]
        base = la.to_numpy(pin_project(sig, fs))
        for z in (1, -1, 1j, -1j):
            scaled = [[z * x for x in fs[0]]] + fs[1:]
            if np.max(np.abs(la.to_numpy(pin_project(sig, scaled)) - base)) > 1e-8:
                ok = False
                details.append("pi(z g) != pi(g) for unit scalar z")
    plane = _definite_plane(sig)
    if plane is None:
        ok = False
        details.append("no compact rotation loop exists: the fundamental group "
                       "is infinite and the universal cover is not a double cover")
    else:
        details.append("rotation loop lifts 1 -> tau (nontrivial double cover)")
    return AxiomResult("PT-4 (universal cover of the complex group is double)",
                       ok, "; ".join(details))


def _check_pt5(sig: Signature, samples: int, seed: int) -> AxiomResult:
    """Sampled evidence for g* = g tau on the non-orthochronous sheet of the
    identity component: elements -i * (real product over the PT class)."""
    rng = np.random.default_rng(seed)
    rep, base_factors = _real_pin_over_pt(sig)
    bad = []
    canonical = None
    for k in range(samples):
        fs = list(base_factors)
        for _ in range(int(rng.integers(0, 2))):
            timelike = bool(rng.random() < 0.5) and sig.p >= 2
            v = _random_real_unit(rng, sig, timelike)
            fs.extend([v, [float(np.real(x)) for x in
                           np.asarray(_random_real_unit(rng, sig, timelike))]])
        h = pin_element(sig, fs)
        proj = la.to_numpy(pin_project(sig, fs))
        if np.max(np.abs(proj.imag)) > 1e-9:
            bad.append("witness projects outside the real group")
            continue
        comp = classify_component(proj.real, sig)
        if comp != PROPER_ANTI:
            continue
        g = h.scaled(-1j)
        if canonical is None:
            canonical = g
        n = complex(_to_c(g.spinor_norm()))
        if abs(n - 1.0) > 1e-9:
            bad.append("witness leaves the identity component of the even part")
        if (g.conjugate() - g.scaled(-1)).norm_inf() > 1e-9:
            bad.append("g* != g tau on a sampled witness")
    ok = not bad and canonical is not None
    return AxiomResult(
        "PT-5 (conjugation is tau-twisted on the time-reversing sheet)", ok,
        "all sampled identity-component elements over the time-reversing "
        "component satisfy g* = g tau" if ok else "; ".join(bad))


def verify_axioms(spacetime, samples: int = 100, seed: int = 0) -> AxiomReport:
    """Evidence for the five group facts, per signature or Galilean input."""
    if isinstance(spacetime, Galilean):
        return _verify_galilean(spacetime, samples, seed)
    sig = spacetime
    if sig.dim > 6:
        raise GroupError("Clifford dimension 2^d bound: need p+q <= 6")
    results = [_check_pt1(sig, max(4, samples // 10), seed)]
    pt2, pt2_ok = _check_pt2(sig, seed)
    results.append(pt2)
    results.append(_check_pt3(sig, pt2_ok, samples, seed + 1))
    results.append(_check_pt4(sig, samples, seed + 2))
    results.append(_check_pt5(sig, samples, seed + 3))
    return AxiomReport(str(sig), results, samples, seed)


def _verify_galilean(g: Galilean, samples: int, seed: int) -> AxiomReport:
    results = []
    rng = np.random.default_rng(seed)
    bad = []
    from .lorentz import galilean_classify
    for k in range(max(4, samples // 10)):
        m = galilean_sample(int(rng.integers(1 << 30)), g)
        if galilean_classify(m, g) != PROPER_ORTHO:
            bad.append("sample %d leaves the identity component" % k)
    results.append(AxiomResult("PT-1 (identity component is connected)", not bad,
                               "rotation/boost samples stay orthochronous proper"
                               if not bad else "; ".join(bad)))
    detail = ("every isometry scales time by a discrete factor s = +-1, and "
              "every Lie-algebra element has a vanishing time row, so the "
              "connected complexification fixes s = 1 exactly and the "
              "time-reversing components do not embed")
    results.append(AxiomResult("PT-2 (proper group embeds in the complexification)",
                               False, detail))
    results.append(AxiomResult(
        "PT-3 (proper group fixed by conjugation)", False,
        "conjugation-fixed elements found only in the orthochronous group"))
    results.append(AxiomResult(
        "PT-4 (universal cover of the complex group is double)", None,
        "not applicable: the degenerate metric admits no Clifford/Pin model"))
    results.append(AxiomResult(
        "PT-5 (conjugation is tau-twisted on the time-reversing sheet)", None,
        "not applicable without the covers of PT-4"))
    return AxiomReport("galilean dim %d" % g.dim, results, samples, seed)
