"""Genus-2 invariants: symbolic identities, scaling laws, numeric root
oracles, and the randomized independence machinery."""

import random
from fractions import Fraction

import numpy
import pytest
import sympy

from spectral_torelli.curve_catalog import (
    CurveFamily,
    catalog_get,
    gar92_hamiltonian_frame,
)
from spectral_torelli.errors import (
    AlignmentError,
    DegenerateCurveError,
    DegreeBoundError,
    InconclusiveError,
    UndefinedChartError,
)
from spectral_torelli.exact_algebra import MultiPoly
from spectral_torelli.igusa_invariants import (
    IgusaInvariants,
    binary_sextic_discriminant,
    frozen_rank_witnesses,
    igusa,
    independence_rank,
    rank_at_point,
    transvectant,
)

GAR_PARAMS = ("h1", "h2", "s1", "s2")


def random_sextic(rng, lo=-9, hi=9):
    while True:
        coeffs = [Fraction(rng.randint(lo, hi)) for _ in range(7)]
        if coeffs[6] == 0:
            continue
        inv = igusa(coeffs)
        if not inv.degenerate:
            return coeffs, inv


def sympy_discriminant(coeffs):
    x = sympy.Symbol("x")
    poly = sympy.Poly([c for c in reversed(coeffs)], x)
    return Fraction(str(sympy.discriminant(poly)))


def test_frozen_table_normalization():
    one = Fraction(1)
    assert binary_sextic_discriminant([-1, 0, 0, 0, 0, 0, one]) == 46656
    with pytest.raises(DegreeBoundError):
        binary_sextic_discriminant([1, 2, 3])


def test_j10_is_the_sextic_discriminant():
    rng = random.Random(71)
    for _ in range(12):
        coeffs, inv = random_sextic(rng)
        assert inv.j10 == sympy_discriminant(coeffs)


def test_quintic_as_sextic_discriminant():
    # with a6 = 0 the sextic discriminant collapses to a5^2 * disc5
    rng = random.Random(73)
    x = sympy.Symbol("x")
    for _ in range(12):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(6)]
        if coeffs[5] == 0:
            coeffs[5] = Fraction(1)
        quintic = sympy.Poly([c for c in reversed(coeffs)], x)
        expected = coeffs[5] ** 2 * Fraction(str(sympy.discriminant(quintic)))
        assert binary_sextic_discriminant(coeffs + [Fraction(0)]) == expected


def test_numeric_root_oracle_for_j10():
    # lc^(2n-2) * prod (r_i - r_j)^2 over numeric roots, within 1e-6
    cases = [
        [0, 1, 0, 0, 0, 1],
        [3, 1, 0, 0, 0, 0, 1],
        [2, -1, 4, 0, 1, 3, 5],
    ]
    for coeffs in cases:
        inv = igusa([Fraction(c) for c in coeffs])
        trimmed = list(coeffs)
        while trimmed[-1] == 0:
            trimmed.pop()
        roots = numpy.roots([float(c) for c in reversed(trimmed)])
        prod = 1.0 + 0.0j
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                prod *= (roots[i] - roots[j]) ** 2
        n = len(trimmed) - 1
        disc = float(trimmed[-1]) ** (2 * n - 2) * prod
        if n == 5:
            disc *= float(trimmed[-1]) ** 2
        target = float(inv.j10)
        assert abs(disc.imag) <= 1e-6 * abs(target)
        assert abs(disc.real - target) <= 1e-6 * abs(target)


def test_symbolic_quintic_invariants():
    inv = igusa(catalog_get("Gar9/2"))
    p = GAR_PARAMS
    assert inv.j2 == MultiPoly.parse("80*h1 + 12*s1^2", p)
    assert inv.j4 == MultiPoly.parse(
        "-800*h2*s2 + 480*h1^2 - 16*h1*s1^2 + 32*s2^2*s1 + 6*s1^4", p
    )
    assert inv.j6 == MultiPoly.parse(
        "-16000*h2^2*s1 + 6400*h2*h1*s2 + 320*h2*s2*s1^2 - 1280*h1^3"
        " + 704*h1^2*s1^2 - 896*h1*s2^2*s1 - 112*h1*s1^4 + 256*s2^4"
        " + 64*s2^2*s1^3 + 4*s1^6",
        p,
    )
    assert inv.j8 * 4 == inv.j2 * inv.j6 - inv.j4 * inv.j4


def test_conserved_frame_is_a_substitution():
    slots = catalog_get("Gar9/2")
    conserved = gar92_hamiltonian_frame()
    images = {
        "h1": MultiPoly.parse("2*s2^2 - h1", GAR_PARAMS),
        "h2": MultiPoly.parse("h2 - s1*s2", GAR_PARAMS),
        "s1": MultiPoly.parse("3*s2", GAR_PARAMS),
        "s2": MultiPoly.parse("-s1", GAR_PARAMS),
    }
    mapped = [c.substitute(images) for c in slots.coefficients]
    assert mapped == list(conserved.coefficients)


def test_j8_identity_on_random_curves():
    rng = random.Random(79)
    for _ in range(10):
        _, inv = random_sextic(rng)
        assert inv.j8 * 4 == inv.j2 * inv.j6 - inv.j4 * inv.j4


def test_translation_invariance():
    rng = random.Random(83)
    x, c = sympy.symbols("x c")
    for _ in range(8):
        coeffs, inv = random_sextic(rng)
        shift = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        poly = sum(sympy.Rational(a) * x ** i for i, a in enumerate(coeffs))
        moved = sympy.Poly(sympy.expand(poly.subs(x, x + sympy.Rational(shift))), x)
        shifted = [Fraction(str(moved.coeff_monomial(x ** i))) for i in range(7)]
        assert igusa(shifted) == inv


def test_scaling_weights():
    rng = random.Random(89)
    coeffs, inv = random_sextic(rng)
    mu = Fraction(-3, 2)
    scaled = igusa([mu * a for a in coeffs])
    weights = (2, 4, 6, 8, 10)
    for got, base, w in zip(scaled.as_tuple(), inv.as_tuple(), weights):
        assert got == mu ** w * base


def test_rescaled_model_has_equal_absolute_invariants():
    # x -> lam*x, y -> lam^3*y sends f to lam^-6 f(lam*x)
    rng = random.Random(97)
    for _ in range(6):
        coeffs, inv = random_sextic(rng)
        if inv.j2 == 0:
            continue
        lam = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        moved = [a * lam ** (i - 6) for i, a in enumerate(coeffs)]
        assert igusa(moved).absolute() == inv.absolute()


def test_absolute_chart():
    inv = IgusaInvariants(
        Fraction(2), Fraction(4), Fraction(8), Fraction(0), Fraction(32)
    )
    assert inv.absolute() == (1, 1, 1)
    bad = IgusaInvariants(
        Fraction(0), Fraction(4), Fraction(8), Fraction(-4), Fraction(32)
    )
    with pytest.raises(UndefinedChartError):
        bad.absolute()


def test_specialized_quintic_point():
    curve = catalog_get("Gar9/2").specialize(
        {"h1": 1, "h2": 0, "s1": 0, "s2": 0}
    )
    inv = igusa(curve)
    assert inv.j2 == 80
    assert inv.j4 == 480
    assert inv.absolute()[0] == Fraction(3, 40)


def test_igusa_input_validation():
    with pytest.raises(DegreeBoundError):
        igusa([1, 2, 3, 4, 5])
    quintic = [Fraction(c) for c in (0, 1, 0, 0, 0, 1)]
    assert igusa(quintic) == igusa(quintic + [Fraction(0)])
    repeated_root = igusa([0, 0, 2, 0, 0, 1])
    assert repeated_root.degenerate


def test_transvectant_basics():
    rng = random.Random(101)
    f = [Fraction(rng.randint(-5, 5)) for _ in range(7)]
    g = [Fraction(rng.randint(-5, 5)) for _ in range(5)]
    f[6] = f[6] or Fraction(1)
    g[4] = g[4] or Fraction(1)
    # zeroth transvectant is the plain product
    prod = transvectant(f, g, 0)
    direct = [Fraction(0)] * 11
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            direct[i + j] += a * b
    assert list(prod) == direct
    # odd self-transvectants vanish identically
    for k in (1, 3, 5):
        assert all(c == 0 for c in transvectant(f, f, k))
    with pytest.raises(DegreeBoundError):
        transvectant(f, g, 5)


def test_rank_at_point_rejections():
    fam = catalog_get("Gar9/2")
    with pytest.raises(AlignmentError):
        rank_at_point(fam, {"h1": 1, "h2": 0, "s1": 0})
    with pytest.raises(DegenerateCurveError):
        rank_at_point(fam, {"h1": 0, "h2": 0, "s1": 0, "s2": 0})
    with pytest.raises(DegenerateCurveError):
        rank_at_point(fam, {"h1": -15, "h2": 1, "s1": 10, "s2": 1})


def test_independence_rank_determinism_and_bounds():
    fam = catalog_get("Gar9/2")
    a = independence_rank(fam, trials=6, seed=123)
    b = independence_rank(fam, trials=6, seed=123)
    assert (a.rank, a.witness, a.trials, a.rejected) == (
        b.rank, b.witness, b.trials, b.rejected,
    )
    assert a.rank <= min(3, len(fam.parameters))
    few = independence_rank(fam, trials=1, seed=123)
    assert few.rank <= a.rank


def test_negative_controls():
    # coefficients free of every parameter: the invariant map is constant
    names = ("h1", "h2", "s1")
    constant = CurveFamily(
        None,
        names,
        [MultiPoly.constant(names, Fraction(c)) for c in (3, 1, 0, 0, 0, 0, 1)],
    )
    assert independence_rank(constant, trials=3).rank == 0
    # a parameterized square factor keeps every member degenerate
    degen = CurveFamily(
        None,
        ("h1",),
        [
            MultiPoly.parse(t, ("h1",))
            for t in ("h1^2", "-2*h1", "1", "h1^2", "-2*h1", "1")
        ],
    )
    with pytest.raises(InconclusiveError):
        independence_rank(degen, trials=4)
    # the split-structure sextic family stays in a proper sublocus
    assert independence_rank(catalog_get("KFS4/3+4/3"), trials=8).rank == 2


def test_frozen_witnesses_replay():
    table = frozen_rank_witnesses()
    assert {w["family"] for w in table} == {
        "Gar9/2", "Gar5/2+3/2", "MatI", "MatIII(D8)",
    }
    for entry in table:
        fam = catalog_get(entry["family"])
        assert rank_at_point(fam, entry["point"]) == entry["rank"] == 3
