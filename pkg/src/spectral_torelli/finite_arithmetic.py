"""Exact finite-field arithmetic and point counting for y^2 = f(x).

Counting walks every x in F_p or F_{p^2} with plain-int modular
arithmetic (no element objects in the hot loop) and a precomputed table
of square-root multiplicities, then adds the points at infinity of the
smooth model: one for deg f = 5, and for deg f = 6 two, none, or the
conjugate pair depending on whether the leading coefficient is a square
in the ground field (in F_{p^2} it always is).

The work is split into chunks whose partial sums are combined in a fixed
order, so the result is identical whatever SPECTRAL_TORELLI_THREADS says.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache

from .errors import BadReductionError, InconsistentCountsError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    n = int(n)
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _validated_odd_prime(p):
    p = int(p)
    if p == 2:
        raise BadReductionError("characteristic 2 is not supported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def quadratic_character(a, p):
    """Legendre symbol via Euler's criterion: 1, -1, or 0."""
    p = _validated_odd_prime(p)
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def smallest_nonresidue(p):
    p = _validated_odd_prime(p)
    for n in range(2, p):
        if quadratic_character(n, p) == -1:
            return n
    raise ValueError(f"no quadratic non-residue modulo {p}")


class Fp:
    """Element of the prime field Z/pZ, p an odd prime.

    Mixed arithmetic with int and Fraction is supported; a Fraction whose
    denominator is divisible by p raises BadReductionError.
    """

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        p = _validated_odd_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", _to_residue(value, p))

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("elements of different prime fields")
            return other.value
        if isinstance(other, (int, Fraction)):
            return _to_residue(other, self.p)
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp((self.value + v) % self.p, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Fp(-self.value % self.p, self.p)

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp((self.value - v) % self.p, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value * v % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.value * pow(v, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, other):
        return Fp(other, self.p) / self

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"inverting zero in F_{self.p}")
            return Fp(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return Fp(pow(self.value, n, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == _to_residue(other, self.p)
            except BadReductionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def is_square(self):
        return quadratic_character(self.value, self.p) >= 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"


def _to_residue(value, p):
    if isinstance(value, Fp):
        if value.p != p:
            raise ValueError("elements of different prime fields")
        return value.value
    if isinstance(value, bool):
        raise TypeError("bool is not a field element")
    if isinstance(value, int):
        return value % p
    if isinstance(value, Fraction):
        den = value.denominator % p
        if den == 0:
            raise BadReductionError(
                f"denominator {value.denominator} is divisible by {p}"
            )
        return value.numerator * pow(den, -1, p) % p
    raise TypeError(f"cannot reduce {type(value).__name__} modulo {p}")


class Fp2:
    """Element a + b*z of F_{p^2}, where z^2 equals the smallest
    positive quadratic non-residue modulo p."""

    __slots__ = ("a", "b", "p", "nonresidue")

    def __init__(self, a, b, p):
        p = _validated_odd_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "nonresidue", smallest_nonresidue(p))
        object.__setattr__(self, "a", _to_residue(a, p))
        object.__setattr__(self, "b", _to_residue(b, p))

    def __setattr__(self, name, value):
        raise AttributeError("Fp2 is immutable")

    @classmethod
    def embed(cls, value, p):
        return cls(value, 0, p)

    def _coerce(self, other):
        if isinstance(other, Fp2):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction, Fp)):
            return Fp2(other, 0, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp2((self.a + o.a) % self.p, (self.b + o.b) % self.p, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Fp2(-self.a % self.p, -self.b % self.p, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n, p = self.nonresidue, self.p
        return Fp2(
            (self.a * o.a + n * self.b * o.b) % p,
            (self.a * o.b + self.b * o.a) % p,
            p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n, p = o.nonresidue, o.p
        norm = (o.a * o.a - n * o.b * o.b) % p
        if norm == 0:
            raise ZeroDivisionError(f"division by zero in F_{p}^2")
        inv = pow(norm, -1, p)
        conj = Fp2(o.a, -o.b % p, p)
        scaled = self * conj
        return Fp2(scaled.a * inv % p, scaled.b * inv % p, p)

    def __rtruediv__(self, other):
        return Fp2(other, 0, self.p) / self

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return (Fp2(1, 0, self.p) / self) ** (-k)
        result = Fp2(1, 0, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self):
        return Fp2(self.a, -self.b % self.p, self.p)

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, Fp2):
            return (self.p, self.a, self.b) == (other.p, other.a, other.b)
        if isinstance(other, (int, Fraction, Fp)):
            return self.b == 0 and Fp(self.a, self.p) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.a, self.b))

    def __repr__(self):
        return f"Fp2({self.a}, {self.b}, {self.p})"


def _thread_count(threads):
    if threads is not None:
        n = int(threads)
    else:
        raw = os.environ.get("SPECTRAL_TORELLI_THREADS", "").strip()
        n = int(raw) if raw else 1
    return max(1, n)


def _chunked_sum(total_range, worker, threads):
    """Sum worker(lo, hi) over a fixed chunk decomposition of
    range(total_range); chunk boundaries do not depend on the thread
    count, so the result cannot either."""
    n_chunks = 16 if total_range >= 16 else max(1, total_range)
    bounds = [
        (total_range * i // n_chunks, total_range * (i + 1) // n_chunks)
        for i in range(n_chunks)
    ]
    if threads <= 1:
        return sum(worker(lo, hi) for lo, hi in bounds)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(lambda b: worker(*b), bounds))
    return sum(partials)


def _model_coefficients(source, p):
    """Normalize to (ascending int 7-tuple mod p, degree in {5, 6})."""
    p = _validated_odd_prime(p)
    if hasattr(source, "sextic_coefficients"):
        seq = list(source.sextic_coefficients())
    else:
        seq = list(source)
    if len(seq) == 6:
        seq.append(0)
    if len(seq) != 7:
        raise BadReductionError("need 6 or 7 ascending coefficients")
    out = [_to_residue(c, p) for c in seq]
    if out[6]:
        degree = 6
    elif out[5]:
        degree = 5
    else:
        raise BadReductionError(
            f"degree drops below 5 modulo {p}; the reduction is bad"
        )
    return tuple(out), degree


def count_points(source, p, *, extension=1, threads=None):
    """Number of points of the smooth model of y^2 = f(x) over F_p
    (extension=1) or F_{p^2} (extension=2).

    The input must reduce to a squarefree model modulo p; this routine
    only enforces the genus-2 Weil bound on the result as a safety net.
    """
    coeffs, degree = _model_coefficients(source, p)
    workers = _thread_count(threads)
    if extension == 1:
        count = _count_ground(coeffs, degree, p, workers)
        q = p
    elif extension == 2:
        count = _count_quadratic(coeffs, degree, p, workers)
        q = p * p
    else:
        raise ValueError("extension must be 1 or 2")
    if (count - (q + 1)) ** 2 > 16 * q:
        raise InconsistentCountsError(
            f"{count} points over GF({q}) violates the genus-2 Weil bound; "
            "the model is not a smooth genus-2 curve"
        )
    return count


def _count_ground(coeffs, degree, p, threads):
    roots = [0] * p
    roots[0] = 1
    for y in range(1, p):
        roots[y * y % p] += 1
    desc = list(coeffs[: degree + 1][::-1])

    def worker(lo, hi):
        s = 0
        for x in range(lo, hi):
            v = 0
            for c in desc:
                v = (v * x + c) % p
            s += roots[v]
        return s

    affine = _chunked_sum(p, worker, threads)
    if degree == 5:
        return affine + 1
    return affine + (2 if roots[coeffs[6]] == 2 else 0)


def _count_quadratic(coeffs, degree, p, threads):
    n = smallest_nonresidue(p)
    roots = {0: 1}
    for a in range(p):
        for b in range(p):
            if a == 0 and b == 0:
                continue
            key = ((a * a + n * b * b) % p) * p + (2 * a * b) % p
            roots[key] = roots.get(key, 0) + 1
    desc = list(coeffs[: degree + 1][::-1])

    def worker(lo, hi):
        s = 0
        for i in range(lo, hi):
            xa, xb = divmod(i, p)
            u = 0
            v = 0
            for c in desc:
                u, v = (u * xa + n * v * xb + c) % p, (u * xb + v * xa) % p
            s += roots.get(u * p + v, 0)
        return s

    affine = _chunked_sum(p * p, worker, threads)
    if degree == 5:
        return affine + 1
    return affine + 2


class PointCount:
    """Counts of a reduction over F_p and F_{p^2}."""

    __slots__ = ("p", "n1", "n2")

    def __init__(self, p, n1, n2):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "n1", int(n1))
        object.__setattr__(self, "n2", int(n2))

    def __setattr__(self, name, value):
        raise AttributeError("PointCount is immutable")

    def __eq__(self, other):
        if not isinstance(other, PointCount):
            return NotImplemented
        return (self.p, self.n1, self.n2) == (other.p, other.n1, other.n2)

    def __repr__(self):
        return f"PointCount(p={self.p}, n1={self.n1}, n2={self.n2})"


def point_counts(source, p, *, threads=None):
    return PointCount(
        p,
        count_points(source, p, extension=1, threads=threads),
        count_points(source, p, extension=2, threads=threads),
    )


class WeilPolynomial:
    """Degree-4 Weil data of a genus-2 reduction at p.

    l_coefficients: ascending numerator of the zeta function,
        1 - a1 t + a2 t^2 - a1 p t^3 + p^2 t^4.
    frobenius_coefficients: ascending characteristic polynomial of
        Frobenius, t^4 - a1 t^3 + a2 t^2 - a1 p t + p^2.
    """

    __slots__ = ("p", "a1", "a2")

    def __init__(self, p, a1, a2):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "a1", int(a1))
        object.__setattr__(self, "a2", int(a2))

    def __setattr__(self, name, value):
        raise AttributeError("WeilPolynomial is immutable")

    @property
    def l_coefficients(self):
        p, a1, a2 = self.p, self.a1, self.a2
        return (1, -a1, a2, -a1 * p, p * p)

    @property
    def frobenius_coefficients(self):
        p, a1, a2 = self.p, self.a1, self.a2
        return (p * p, -a1 * p, a2, -a1, 1)

    def __eq__(self, other):
        if not isinstance(other, WeilPolynomial):
            return NotImplemented
        return (self.p, self.a1, self.a2) == (other.p, other.a1, other.a2)

    def __repr__(self):
        return f"WeilPolynomial(p={self.p}, a1={self.a1}, a2={self.a2})"


def weil_polynomial(counts):
    """Weil data from the two point counts of a genus-2 reduction."""
    p, n1, n2 = counts.p, counts.n1, counts.n2
    a1 = p + 1 - n1
    if (n2 + n1 * n1) % 2:
        raise InconsistentCountsError(
            f"N2 + N1^2 = {n2 + n1 * n1} is odd; counts are inconsistent"
        )
    a2 = (n2 + n1 * n1) // 2 - (p + 1) * n1 + p
    return WeilPolynomial(p, a1, a2)


def _poly_string(coeffs_ascending, var="t"):
    parts = []
    for e in range(len(coeffs_ascending) - 1, -1, -1):
        c = coeffs_ascending[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = f"{mag}"
        else:
            stem = var if e == 1 else f"{var}^{e}"
            body = stem if mag == 1 else f"{mag}*{stem}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def zeta_rational_form(weil):
    """The zeta function of the reduction as numerator / (1-t)(1-pt)."""
    num = weil.l_coefficients
    return {
        "p": weil.p,
        "numerator": list(num),
        "denominator_factors": [[1, -1], [1, -weil.p]],
        "display": (
            f"({_poly_string(num)}) / ((1 - t)*(1 - {weil.p}*t))"
        ),
    }
