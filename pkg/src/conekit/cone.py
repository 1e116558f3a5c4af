"""Proper linear cones: membership, properness, order, core, dual cones.

Polyhedral membership and properness are decided by exact rational LP,
because boundary points (null vectors, facets) are routine inputs here and
float LP misclassifies them.  PCone membership is exact for p in {1, 2, inf}
via squared comparisons; FutureCone membership is exact through the form.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    DimensionMismatch,
    NotCausal,
    NotLorentzian,
    NotMember,
    UnsupportedFamily,
)
from .lorentz import (
    FormKind,
    GramForm,
    LorentzFrame,
    classify,
    frame_from_unit_vector,
    fraction_sqrt_bounds,
    wick_inner,
    wick_orthogonal_basis,
)
from .numerics import Vector, lp_nonneg_solve


@dataclass(frozen=True)
class Polyhedral:
    """Conic hull of finitely many generators."""

    generators: tuple

    def __init__(self, generators: Sequence[Vector]):
        gens = tuple(generators)
        if not gens:
            raise DimensionMismatch("need at least one generator")
        if any(g.dim != gens[0].dim for g in gens):
            raise DimensionMismatch("generators disagree on ambient dimension")
        object.__setattr__(self, "generators", gens)

    @property
    def ambient_dim(self) -> int:
        return self.generators[0].dim


@dataclass(frozen=True)
class PCone:
    """{(x0, x) : x0 >= |x|_p} in R^{1+n}; p = math.inf is allowed."""

    p: object
    spatial_dim: int

    @property
    def ambient_dim(self) -> int:
        return self.spatial_dim + 1


@dataclass(frozen=True)
class FutureCone:
    """Causal future of t under a Lorentzian Gram form."""

    form: GramForm
    t: Vector

    @property
    def ambient_dim(self) -> int:
        return self.t.dim


@dataclass(frozen=True)
class Orthant:
    """Componentwise-nonnegative functions on a finite discrete space."""

    dim: int

    @property
    def ambient_dim(self) -> int:
        return self.dim


Cone = Union[Polyhedral, PCone, FutureCone, Orthant]


def ambient_dim(c: Cone) -> int:
    return c.ambient_dim


def _check_dim(c: Cone, x: Vector):
    if x.dim != c.ambient_dim:
        raise DimensionMismatch(f"vector dim {x.dim} != ambient dim {c.ambient_dim}")


def _polyhedral_coeffs(c: Polyhedral, x: Vector):
    a = [
        [g.coords[i] for g in c.generators] for i in range(c.ambient_dim)
    ]  # columns = generators
    return lp_nonneg_solve(a, list(x.coords))


def _pcone_spatial_norm_holds(p, x0, spatial) -> bool:
    """x0 >= |spatial|_p, exact where possible."""
    if x0 < 0:
        return False
    if p == 1:
        return x0 >= sum(abs(s) for s in spatial)
    if p == 2:
        return x0 * x0 >= sum(s * s for s in spatial)
    if p == math.inf:
        return all(x0 >= abs(s) for s in spatial)
    return float(x0) >= sum(abs(float(s)) ** float(p) for s in spatial) ** (1.0 / float(p))


def contains(c: Cone, x: Vector) -> bool:
    _check_dim(c, x)
    if isinstance(c, Orthant):
        return all(v >= 0 for v in x.coords)
    if isinstance(c, PCone):
        return _pcone_spatial_norm_holds(c.p, x.coords[0], x.coords[1:])
    if isinstance(c, FutureCone):
        return c.form.inner(x, x) >= 0 and c.form.inner(x, c.t) >= 0
    return _polyhedral_coeffs(c, x) is not None


@dataclass(frozen=True)
class Properness:
    proper: bool
    witness: Vector | None = None

    def __bool__(self) -> bool:
        return self.proper


def is_proper(c: Cone) -> Properness:
    """Decide F cap (-F) = {0}.

    Polyhedral: the lineality space is nontrivial iff -g in F for some
    nonzero generator g (if v = sum theta_i g_i is in F cap (-F), then
    -theta_i g_i = -v + sum_{j != i} theta_j g_j lies in F).  FutureCone and
    PCone are proper by construction, FutureCone provided its form
    classifies as Lorentzian.
    """
    if isinstance(c, (Orthant, PCone)):
        return Properness(True)
    if isinstance(c, FutureCone):
        if classify(c.form).kind is not FormKind.LORENTZIAN:
            raise NotLorentzian("future cone over a non-Lorentzian form")
        return Properness(True)
    for g in c.generators:
        if not g.is_zero() and contains(c, -g):
            return Properness(False, g)
    return Properness(True)


def leq(x: Vector, y: Vector, c: Cone) -> bool:
    """Cone order: x <= y iff y - x in F."""
    return contains(c, y - x)


_CORE_EPS_CUTOFF = Fraction(1, 2**20)


def in_core(c: Cone, x: Vector) -> bool:
    """Algebraic-interior membership (core in the ordered-cone sense).

    Core is taken as the algebraic interior; for FutureCone/PCone this
    coincides with strict inequalities, for full-dimensional Polyhedral
    cones it is decided by a halving epsilon search down to 2**-20 along
    the coordinate directions (recorded as False past the cutoff).
    """
    if not contains(c, x):
        raise NotMember(f"{x!r} is not in the cone")
    if isinstance(c, Orthant):
        return all(v > 0 for v in x.coords)
    if isinstance(c, PCone):
        x0, spatial = x.coords[0], x.coords[1:]
        if not _pcone_spatial_norm_holds(c.p, x0, spatial):
            return False
        # strictness: rule out equality
        if c.p == 1:
            return x0 > sum(abs(s) for s in spatial)
        if c.p == 2:
            return x0 > 0 and x0 * x0 > sum(s * s for s in spatial)
        if c.p == math.inf:
            return all(x0 > abs(s) for s in spatial)
        return float(x0) > sum(abs(float(s)) ** float(c.p) for s in spatial) ** (1.0 / float(c.p))
    if isinstance(c, FutureCone):
        return c.form.inner(x, x) > 0 and c.form.inner(x, c.t) > 0
    eps = Fraction(1)
    while eps >= _CORE_EPS_CUTOFF:
        ok = True
        for i in range(c.ambient_dim):
            e = Vector.unit(c.ambient_dim, i).scale(eps)
            if not (contains(c, x + e) and contains(c, x - e)):
                ok = False
                break
        if ok:
            return True
        eps /= 2
    return False


def dual_contains(c: Cone, g: GramForm, v: Vector) -> bool:
    """Membership of a causal vector v in the dual cone F*.

    Polyhedral: <v, g_i> >= 0 over the generators (necessary and sufficient
    for conic hulls).  FutureCone: by reverse Cauchy-Schwarz the dual of the
    future cone is itself, so this is future-cone membership.
    """
    _check_dim(c, v)
    if g.inner(v, v) < 0:
        raise NotCausal("dual cone membership is only defined for causal vectors")
    if isinstance(c, Polyhedral):
        return all(g.inner(v, gen) >= 0 for gen in c.generators)
    if isinstance(c, FutureCone):
        return g.inner(v, c.t) >= 0
    raise UnsupportedFamily("dual_contains expects Polyhedral or FutureCone")


def _sampling_frame(c: Cone, g: GramForm) -> LorentzFrame:
    if isinstance(c, FutureCone):
        return LorentzFrame(g, c.t)
    if isinstance(c, Polyhedral):
        for gen in c.generators:
            if g.inner(gen, gen) > 0:
                return frame_from_unit_vector(g, gen)
    raise NotLorentzian("no timelike generator available for causal sampling")


def sample_future_causal(
    frame: LorentzFrame, rng: random.Random, radius: Fraction = Fraction(10)
) -> Vector:
    """Exact future-causal sample: alpha*t + w with n(w) <= alpha <= radius.

    alpha is uniform in [0, radius]; w is drawn in the Wick unit ball of the
    spatial complement and scaled by alpha, which guarantees membership and
    avoids rejection bias near the light cone.
    """
    basis = wick_orthogonal_basis(frame)
    alpha = Fraction(rng.randint(0, 1000), 1000) * radius
    if not basis:
        return frame.t.scale(alpha)
    w = Vector.zero(frame.dim)
    for b in basis:
        w = w + b.scale(Fraction(rng.randint(-1000, 1000), 1000))
    s = wick_inner(frame, w, w)
    if s > 0:
        _, hi = fraction_sqrt_bounds(s)
        u = Fraction(rng.randint(0, 1000), 1000)
        w = w.scale(u / hi)  # Wick norm now <= u <= 1
    return frame.t.scale(alpha) + w.scale(alpha)


@dataclass(frozen=True)
class SelfDualityReport:
    holds: bool
    witness: Vector | None
    samples_checked: int
    direction: str | None = None  # which inclusion failed


def self_duality_report(
    c: Cone,
    g: GramForm,
    samples: int,
    seed: int,
    radius: Fraction = Fraction(10),
) -> SelfDualityReport:
    """Sampled check of F = F* against the causal structure of g.

    F subset F* is checked exactly on generators (Polyhedral) resp. on
    sampled pairs via the reverse Cauchy-Schwarz sign (FutureCone);
    F* subset F is probed on `samples` future-causal vectors.
    """
    rng = random.Random(seed)
    frame = _sampling_frame(c, g)
    # F subset F*: pairwise nonnegativity of the form on F
    if isinstance(c, Polyhedral):
        for a in c.generators:
            if g.inner(a, a) < 0:
                return SelfDualityReport(False, a, 0, "F_not_causal")
            for b in c.generators:
                if g.inner(a, b) < 0:
                    return SelfDualityReport(False, a, 0, "F_not_subset_dual")
    checked = 0
    for _ in range(samples):
        v = sample_future_causal(frame, rng, radius)
        checked += 1
        if isinstance(c, FutureCone):
            u = sample_future_causal(frame, rng, radius)
            if g.inner(u, v) < 0:
                return SelfDualityReport(False, v, checked, "F_not_subset_dual")
        try:
            in_dual = dual_contains(c, g, v)
        except NotCausal:
            continue
        if in_dual and not contains(c, v):
            return SelfDualityReport(False, v, checked, "dual_not_subset_F")
    return SelfDualityReport(True, None, checked)
