"""Chiral-basis gamma matrices with exact Gaussian-rational entries.

gamma5 = i gamma0 gamma1 gamma2 gamma3 = diag(-1, -1, 1, 1); the first two
spinor components are the gamma5 = -1 chirality.  Under the cover pairing
used by this package that chirality transforms by (A^dagger)^-1, so the
Dirac representation is the direct sum weyl_right (+) weyl_left.
"""

from __future__ import annotations

from .scalars import QI

_O = QI(0)
_1 = QI(1)
_I = QI(0, 1)

SIGMA = (
    ((_1, _O), (_O, _1)),
    ((_O, _1), (_1, _O)),
    ((_O, -_I), (_I, _O)),
    ((_1, _O), (_O, -_1)),
)


def _block(a, b, c, d):
    top = tuple(tuple(a[r][q] for q in range(2)) + tuple(b[r][q] for q in range(2))
                for r in range(2))
    bot = tuple(tuple(c[r][q] for q in range(2)) + tuple(d[r][q] for q in range(2))
                for r in range(2))
    return top + bot


def _neg(m):
    return tuple(tuple(-x for x in row) for row in m)


_Z = ((_O, _O), (_O, _O))

GAMMA = (
    _block(_Z, SIGMA[0], SIGMA[0], _Z),
    _block(_Z, SIGMA[1], _neg(SIGMA[1]), _Z),
    _block(_Z, SIGMA[2], _neg(SIGMA[2]), _Z),
    _block(_Z, SIGMA[3], _neg(SIGMA[3]), _Z),
)

GAMMA5 = _block(_neg(SIGMA[0]), _Z, _Z, SIGMA[0])


def gamma(mu: int):
    """gamma^mu for mu in 0..3, or gamma5 for mu = 5."""
    if mu == 5:
        return GAMMA5
    return GAMMA[mu]
