"""Hyperbolic norm families, polarization, reverse Cauchy-Schwarz.

Exact mode works on squared norms: every check expressible in squares
(polarizability, reverse CS, equality cases) is decided over Fraction, so
null and boundary cases come out exactly.  Square roots force floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .cone import Cone, FutureCone, Orthant, PCone, contains
from .errors import OutsideCone, UnsupportedFamily
from .numerics import Scalar, Vector, exact_rank


@dataclass(frozen=True)
class PHyperbolic:
    """(x0^p - sum |x_j|^p)^(1/p) on the p-cone in R^{1+n}."""

    p: object
    spatial_dim: int


@dataclass(frozen=True)
class DiscreteLq:
    """(sum mu_i f_i^q)^(1/q), 0 < q < 1, on the orthant."""

    q: Fraction
    weights: tuple

    def __init__(self, q, weights):
        q = Fraction(q)
        if not 0 < q < 1:
            raise UnsupportedFamily("DiscreteLq requires q in (0, 1)")
        ws = tuple(Fraction(w) for w in weights)
        if any(w <= 0 for w in ws):
            raise UnsupportedFamily("weights must be positive")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "weights", ws)


@dataclass(frozen=True)
class FormInduced:
    """sqrt(<v, v>) restricted to a future cone."""

    cone: FutureCone


HyperbolicNorm = Union[PHyperbolic, DiscreteLq, FormInduced]


def cone_of(h: HyperbolicNorm) -> Cone:
    if isinstance(h, PHyperbolic):
        return PCone(h.p, h.spatial_dim)
    if isinstance(h, DiscreteLq):
        return Orthant(len(h.weights))
    return h.cone


def _require_member(h: HyperbolicNorm, x: Vector):
    if not contains(cone_of(h), x):
        raise OutsideCone(f"{x!r} is outside the cone of {h!r}")


def _norm_sq_exactable(h: HyperbolicNorm) -> bool:
    """Families whose squared norm is a rational function of rational input."""
    if isinstance(h, FormInduced):
        return True
    return isinstance(h, PHyperbolic) and h.p in (1, 2)


def _norm_sq(h: HyperbolicNorm, x: Vector) -> Scalar:
    """Squared norm; Fraction for p in {1,2} and FormInduced, float otherwise."""
    if isinstance(h, FormInduced):
        return h.cone.form.inner(x, x)
    if isinstance(h, PHyperbolic):
        x0, spatial = x.coords[0], x.coords[1:]
        if h.p == 2:
            return x0 * x0 - sum(s * s for s in spatial)
        if h.p == 1:
            r = x0 - sum(abs(s) for s in spatial)
            return r * r
        v = _pnorm_value(h.p, x0, spatial)
        return v * v
    return norm_eval(h, x) ** 2


def _pnorm_value(p, x0, spatial) -> float:
    inner = abs(float(x0)) ** float(p) - sum(abs(float(s)) ** float(p) for s in spatial)
    return max(inner, 0.0) ** (1.0 / float(p))


def norm_eval(h: HyperbolicNorm, x: Vector) -> float:
    """Norm value as a float (the codomain is [0, inf]; these families are finite)."""
    _require_member(h, x)
    if isinstance(h, FormInduced):
        return math.sqrt(max(float(h.cone.form.inner(x, x)), 0.0))
    if isinstance(h, PHyperbolic):
        return _pnorm_value(h.p, x.coords[0], x.coords[1:])
    acc = sum(float(w) * float(f) ** float(h.q) for w, f in zip(h.weights, x.coords))
    return acc ** (1.0 / float(h.q)) if acc > 0 else 0.0


def norm_sq_eval(h: HyperbolicNorm, x: Vector) -> Scalar:
    """Exact rational squared norm; only the quadratic families support it."""
    if not (isinstance(h, FormInduced) or (isinstance(h, PHyperbolic) and h.p == 2)):
        raise UnsupportedFamily("exact squared norm needs p = 2 or a form-induced norm")
    _require_member(h, x)
    return _norm_sq(h, x)


def reverse_triangle_residual(h: HyperbolicNorm, u: Vector, v: Vector) -> float:
    """||u + v|| - ||u|| - ||v||; >= 0 for a valid hyperbolic norm."""
    _require_member(h, u)
    _require_member(h, v)
    return norm_eval(h, u + v) - norm_eval(h, u) - norm_eval(h, v)


def polarizability_residual(h: HyperbolicNorm, v: Vector, w: Vector) -> Scalar:
    """LHS - RHS of ||v+2w||^2 + ||v||^2 = 2||v+w||^2 + 2||w||^2.

    Exactly zero (Fraction) on positively polarizable exact families;
    nonzero witnesses certify failure for p = 1 (exact) and p = 3 (float).
    """
    _require_member(h, v)
    _require_member(h, w)
    lhs = _norm_sq(h, v + w.scale(2)) + _norm_sq(h, v)
    rhs = 2 * _norm_sq(h, v + w) + 2 * _norm_sq(h, w)
    return lhs - rhs


def polar_inner(h: HyperbolicNorm, v: Vector, w: Vector) -> Scalar:
    """Polarization pairing (||v+w||^2 - ||v||^2 - ||w||^2) / 2, exact."""
    if not (isinstance(h, FormInduced) or (isinstance(h, PHyperbolic) and h.p == 2)):
        raise UnsupportedFamily("exact polarization needs p = 2 or a form-induced norm")
    _require_member(h, v)
    _require_member(h, w)
    return (_norm_sq(h, v + w) - _norm_sq(h, v) - _norm_sq(h, w)) / 2


@dataclass(frozen=True)
class ReverseCSResult:
    residual: float  # <v,w> - ||v|| ||w||
    inner: Scalar  # exact <v,w>
    inner_sq_minus_prod: Scalar  # exact <v,w>^2 - ||v||^2 ||w||^2
    holds: bool  # decided without square roots


def reverse_cs_residual(h: HyperbolicNorm, v: Vector, w: Vector) -> ReverseCSResult:
    """Reverse Cauchy-Schwarz check <v,w> >= ||v|| ||w|| on cone members."""
    inner = polar_inner(h, v, w)
    nv, nw = _norm_sq(h, v), _norm_sq(h, w)
    gap = inner * inner - nv * nw
    holds = inner >= 0 and gap >= 0
    residual = float(inner) - math.sqrt(max(float(nv), 0.0) * max(float(nw), 0.0))
    return ReverseCSResult(residual, inner, gap, holds)


def reverse_triangle_holds_exact(h: HyperbolicNorm, u: Vector, v: Vector) -> bool:
    """||u+v|| >= ||u|| + ||v|| via squared comparison (no square roots)."""
    return reverse_cs_residual(h, u, v).holds


@dataclass(frozen=True)
class EqualityCollinearity:
    equality: bool
    collinear: bool


def _collinear_nonneg(v: Vector, w: Vector) -> bool:
    if v.is_zero() or w.is_zero():
        return True
    if exact_rank([list(v.coords), list(w.coords)]) > 1:
        return False
    i = next(i for i, c in enumerate(w.coords) if c != 0)
    return v.coords[i] / w.coords[i] >= 0


def equality_is_collinear(h: HyperbolicNorm, v: Vector, w: Vector) -> EqualityCollinearity:
    """Detect ||v+w|| = ||v|| + ||w|| and whether v, w are nonneg-collinear.

    On exact families equality reduces to <v,w>^2 = ||v||^2 ||w||^2 (both
    sides rational); collinearity is an exact rank check plus sign of the
    ratio.  Float families fall back to tolerance comparisons.
    """
    _require_member(h, v)
    _require_member(h, w)
    if _norm_sq_exactable(h) and v.exact and w.exact:
        if isinstance(h, PHyperbolic) and h.p == 1:
            # the 1-hyperbolic norm itself is rational: compare values directly
            def n1(u):
                return u.coords[0] - sum(abs(c) for c in u.coords[1:])

            eq = n1(v + w) == n1(v) + n1(w)
        else:
            # equality iff <v,w> = ||v|| ||w||, decided in squares
            eq = reverse_cs_residual(h, v, w).inner_sq_minus_prod == 0
        return EqualityCollinearity(eq, _collinear_nonneg(v, w))
    res = reverse_triangle_residual(h, v, w)
    eq = abs(res) <= 1e-9
    vf, wf = v.as_floats(), w.as_floats()
    cross = all(
        abs(vf[i] * wf[j] - vf[j] * wf[i]) <= 1e-9
        for i in range(len(vf))
        for j in range(i + 1, len(wf))
    )
    return EqualityCollinearity(eq, cross)
