"""Igusa invariants of genus-2 hyperelliptic models y^2 = f(x).

Everything here works over a generic exact coefficient domain: Fraction,
Jet1 (forward derivatives), MultiPoly (symbolic parameters), or a prime
field element type that tolerates int/Fraction scalars. The discriminant
of the binary sextic is evaluated from a frozen integer term table rather
than recomputed, so the same 246 monomials back both characteristic-zero
and finite-field checks.
"""

import json
import math
import random
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import (
    AlignmentError,
    DegenerateCurveError,
    DegreeBoundError,
    InconclusiveError,
    UndefinedChartError,
)
from .exact_algebra import Jet1, MultiPoly, jet_point, rational_matrix_rank

DEFAULT_SEED = 20260819


@lru_cache(maxsize=None)
def _data(name):
    path = resources.files("spectral_torelli.data").joinpath(name)
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def _discriminant_terms():
    blob = _data("sextic_discriminant.json")
    if blob.get("schema_version") != 1:
        raise ValueError("unsupported sextic discriminant table version")
    terms = tuple(
        (tuple(exps), int(coeff)) for exps, coeff in blob["terms"]
    )
    if len(terms) != 246:
        raise ValueError("sextic discriminant table is truncated")
    return terms


def binary_sextic_discriminant(coefficients):
    """Discriminant of b0 + b1*x + ... + b6*x^6 from the frozen table.

    `coefficients` is an ascending length-7 sequence over any commutative
    ring whose elements support +, *, ** and multiplication by int.
    """
    b = tuple(coefficients)
    if len(b) != 7:
        raise DegreeBoundError("expected 7 ascending sextic coefficients")
    powers = []
    for elt in b:
        powers.append({0: None, 1: elt})
    total = b[0] * 0
    for exps, c in _discriminant_terms():
        factor = None
        for i, e in enumerate(exps):
            if e == 0:
                continue
            cache = powers[i]
            if e not in cache:
                cache[e] = b[i] ** e
            p = cache[e]
            factor = p if factor is None else factor * p
        total = total + (factor * c)
    return total


def _lift_common(coeffs):
    """Coerce a mixed scalar/struct coefficient list onto one domain."""
    coeffs = list(coeffs)
    polys = [c for c in coeffs if isinstance(c, MultiPoly)]
    if polys:
        variables = polys[0].variables
        for p in polys[1:]:
            if p.variables != variables:
                raise AlignmentError("coefficients over different variable lists")
        out = []
        for c in coeffs:
            if isinstance(c, MultiPoly):
                out.append(c)
            elif isinstance(c, (int, Fraction)):
                out.append(MultiPoly.constant(variables, Fraction(c)))
            else:
                raise AlignmentError("cannot mix symbolic and foreign coefficients")
        return out
    jets = [c for c in coeffs if isinstance(c, Jet1)]
    if jets:
        n = len(jets[0].partials)
        for j in jets[1:]:
            if len(j.partials) != n:
                raise AlignmentError("jets track different parameter lists")
        out = []
        for c in coeffs:
            if isinstance(c, Jet1):
                out.append(c)
            elif isinstance(c, (int, Fraction)):
                out.append(Jet1.constant(c, n))
            else:
                raise AlignmentError("cannot mix jet and foreign coefficients")
        return out
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        return [Fraction(c) for c in coeffs]
    return coeffs


class _Form:
    """Homogeneous binary form, ascending powers of the first variable."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, coefficients, degree):
        coefficients = tuple(coefficients)
        if len(coefficients) != degree + 1:
            raise DegreeBoundError("coefficient count does not match degree")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("_Form is immutable")

    def dx(self):
        c = self.coefficients
        return _Form([c[i] * i for i in range(1, self.degree + 1)], self.degree - 1)

    def dz(self):
        c = self.coefficients
        d = self.degree
        return _Form([c[i] * (d - i) for i in range(d)], d - 1)

    def __mul__(self, other):
        d = self.degree + other.degree
        zero = self.coefficients[0] * 0
        out = [zero] * (d + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return _Form(out, d)

    def scaled(self, q):
        return _Form([c * q for c in self.coefficients], self.degree)

    def plus(self, other):
        if other.degree != self.degree:
            raise DegreeBoundError("form degrees differ")
        return _Form(
            [a + b for a, b in zip(self.coefficients, other.coefficients)],
            self.degree,
        )


def _deriv(form, nx, nz):
    out = form
    for _ in range(nx):
        out = out.dx()
    for _ in range(nz):
        out = out.dz()
    return out


def _transvectant_form(f, g, k):
    m, n = f.degree, g.degree
    if k < 0 or k > min(m, n):
        raise DegreeBoundError("transvectant index exceeds a form degree")
    pref = Fraction(
        math.factorial(m - k) * math.factorial(n - k),
        math.factorial(m) * math.factorial(n),
    )
    total = None
    for i in range(k + 1):
        sign = -1 if i % 2 else 1
        weight = sign * math.comb(k, i)
        term = (_deriv(f, k - i, i) * _deriv(g, i, k - i)).scaled(weight)
        total = term if total is None else total.plus(term)
    return total.scaled(pref)


def transvectant(f_coefficients, g_coefficients, k):
    """k-th transvectant of two binary forms given by ascending
    coefficient sequences (degree = length - 1). Returns the ascending
    coefficient tuple of the resulting form."""
    f = _Form(_lift_common(f_coefficients), len(tuple(f_coefficients)) - 1)
    g = _Form(_lift_common(g_coefficients), len(tuple(g_coefficients)) - 1)
    return _transvectant_form(f, g, k).coefficients


def _is_zero_value(x):
    if isinstance(x, MultiPoly):
        return x.is_zero()
    if isinstance(x, Jet1):
        return not x.value
    return x == 0


class IgusaInvariants:
    """The tuple (J2, J4, J6, J8, J10), weighted by coefficient degree."""

    __slots__ = ("j2", "j4", "j6", "j8", "j10")

    def __init__(self, j2, j4, j6, j8, j10):
        object.__setattr__(self, "j2", j2)
        object.__setattr__(self, "j4", j4)
        object.__setattr__(self, "j6", j6)
        object.__setattr__(self, "j8", j8)
        object.__setattr__(self, "j10", j10)

    def __setattr__(self, name, value):
        raise AttributeError("IgusaInvariants is immutable")

    def as_tuple(self):
        return (self.j2, self.j4, self.j6, self.j8, self.j10)

    @property
    def degenerate(self):
        return _is_zero_value(self.j10)

    def absolute(self):
        """Scaling-free coordinates (J4/J2^2, J6/J2^3, J10/J2^5).

        Only defined on the chart J2 != 0; symbolic inputs should keep
        the weighted tuple instead.
        """
        j2 = self.j2
        if _is_zero_value(j2):
            raise UndefinedChartError(
                "absolute invariants undefined: J2 vanishes"
            )
        return (
            self.j4 / (j2 * j2),
            self.j6 / (j2 * j2 * j2),
            self.j10 / (j2 ** 5),
        )

    def __eq__(self, other):
        if not isinstance(other, IgusaInvariants):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __repr__(self):
        return (
            f"IgusaInvariants(j2={self.j2!r}, j4={self.j4!r}, j6={self.j6!r}, "
            f"j8={self.j8!r}, j10={self.j10!r})"
        )


def igusa(source):
    """Igusa invariants of y^2 = f(x) with deg f in {5, 6}.

    `source` is either an ascending coefficient sequence (length 6 or 7;
    a quintic is treated as a sextic with vanishing leading coefficient)
    or any object exposing sextic_coefficients().
    """
    if hasattr(source, "sextic_coefficients"):
        coeffs = list(source.sextic_coefficients())
    else:
        coeffs = list(source)
    if len(coeffs) == 6:
        coeffs.append(coeffs[0] * 0)
    if len(coeffs) != 7:
        raise DegreeBoundError("need 6 or 7 ascending coefficients")
    coeffs = _lift_common(coeffs)
    f = _Form(coeffs, 6)
    a = _transvectant_form(f, f, 6).coefficients[0]
    quartic = _transvectant_form(f, f, 4)
    b = _transvectant_form(quartic, quartic, 4).coefficients[0]
    hessian = _transvectant_form(quartic, quartic, 2)
    c = _transvectant_form(quartic, hessian, 4).coefficients[0]
    j2 = a * (-240)
    j4 = (a * a) * 4320 + b * (-18000)
    j6 = (a * a * a) * 34560 + (a * b) * (-432000) + c * (-1440000)
    j8 = (j2 * j6 + (j4 * j4) * (-1)) / 4
    j10 = binary_sextic_discriminant(coeffs)
    return IgusaInvariants(j2, j4, j6, j8, j10)


class RankReport:
    """Outcome of a randomized invariant-independence search."""

    __slots__ = ("identifier", "rank", "witness", "trials", "rejected", "seed")

    def __init__(self, identifier, rank, witness, trials, rejected, seed):
        object.__setattr__(self, "identifier", identifier)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "witness", dict(witness))
        object.__setattr__(self, "trials", trials)
        object.__setattr__(self, "rejected", rejected)
        object.__setattr__(self, "seed", seed)

    def __setattr__(self, name, value):
        raise AttributeError("RankReport is immutable")

    def __repr__(self):
        return (
            f"RankReport(identifier={self.identifier!r}, rank={self.rank}, "
            f"witness={self.witness!r})"
        )


def rank_at_point(family, point):
    """Rank of the Jacobian of the absolute invariants with respect to
    the family parameters, at one rational parameter point.

    Rejects points where J10 or J2 vanishes (the absolute chart breaks
    down there) by raising DegenerateCurveError.
    """
    params = tuple(family.parameters)
    values = {}
    for name in params:
        if name not in point:
            raise AlignmentError(f"no value for parameter {name!r}")
        values[name] = Fraction(point[name])
    lifted = jet_point(values, params)
    coeffs = [p.evaluate(lifted) for p in family.sextic_coefficients()]
    inv = igusa(coeffs)
    if _is_zero_value(inv.j10):
        raise DegenerateCurveError("sample hits the discriminant locus")
    if _is_zero_value(inv.j2):
        raise DegenerateCurveError("sample hits the J2 = 0 locus")
    rows = [list(coord.partials) for coord in inv.absolute()]
    return rational_matrix_rank(rows)


def independence_rank(family, *, trials=16, seed=DEFAULT_SEED, bound=100):
    """Maximal observed rank of the absolute-invariant Jacobian over
    random rational parameter points with numerator and denominator
    bounded by `bound`. Deterministic for a fixed seed."""
    params = tuple(family.parameters)
    if not params:
        raise AlignmentError("family has no parameters")
    cap = min(3, len(params))
    rng = random.Random(seed)
    best_rank = 0
    best_point = None
    rejected = 0
    used = 0
    for _ in range(trials):
        used += 1
        point = {
            name: Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            for name in params
        }
        try:
            r = rank_at_point(family, point)
        except DegenerateCurveError:
            rejected += 1
            continue
        if r > best_rank or best_point is None:
            best_rank = r
            best_point = point
        if best_rank == cap:
            break
    if best_point is None:
        raise InconclusiveError(
            f"all {trials} sample points were degenerate; grow the bound"
        )
    identifier = getattr(family, "identifier", None)
    return RankReport(identifier, best_rank, best_point, used, rejected, seed)


def frozen_rank_witnesses():
    """Recorded (family, point, rank) triples for deterministic replay."""
    blob = _data("rank_witnesses.json")
    if blob.get("schema_version") != 1:
        raise ValueError("unsupported rank witness table version")
    out = []
    for entry in blob["witnesses"]:
        point = {k: Fraction(v) for k, v in entry["point"].items()}
        out.append(
            {
                "family": entry["family"],
                "point": point,
                "rank": int(entry["rank"]),
            }
        )
    return out
