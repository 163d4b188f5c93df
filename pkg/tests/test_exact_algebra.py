"""Exact-arithmetic kernel checked against sympy on random inputs."""

import random
from fractions import Fraction

import pytest
import sympy

from spectral_torelli.errors import (
    AlignmentError,
    DegreeBoundError,
    ExactDivisionError,
    PolyParseError,
)
from spectral_torelli.exact_algebra import (
    Jet1,
    MultiPoly,
    UniPoly,
    discriminant,
    jet_eval,
    rational_matrix_rank,
    resultant,
)

VARS = ("a", "b", "c")
SYMS = sympy.symbols(VARS)


def to_sympy(p):
    expr = sympy.Integer(0)
    for exps, coeff in p.sorted_terms():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(SYMS, exps):
            term *= s ** e
        expr += term
    return expr


def random_poly(rng, variables=VARS, max_terms=6, max_exp=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in variables)
        terms[exps] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return MultiPoly(variables, terms)


def test_zero_terms_are_dropped():
    p = MultiPoly(VARS, {(1, 0, 0): 0, (0, 1, 0): 2})
    assert p == MultiPoly.parse("2*b", VARS)
    assert not p.is_zero()
    assert MultiPoly(VARS, {(2, 1, 0): 0}).is_zero()


def test_parse_agrees_with_sympy():
    texts = [
        "3*a^2*b - 7",
        "-(a + b)*(a - b) + c^3",
        "a^2 - 2*a*b + b^2",
        "1/2*a - 3/4",
        "-5",
        "a*(b + 2*(c - 1))",
    ]
    for text in texts:
        mine = MultiPoly.parse(text, VARS)
        ref = sympy.expand(sympy.sympify(text.replace("^", "**")))
        assert sympy.expand(to_sympy(mine) - ref) == 0


def test_parse_rejects_garbage():
    for bad in ("a +", "2**a", "(a", "a^b", "q + 1", ""):
        with pytest.raises(PolyParseError):
            MultiPoly.parse(bad, VARS)


def test_ring_ops_match_sympy():
    rng = random.Random(101)
    for _ in range(40):
        p, q = random_poly(rng), random_poly(rng)
        assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
        assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0
        assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


def test_pow_and_scalar_ops():
    rng = random.Random(5)
    p = random_poly(rng, max_terms=3, max_exp=2)
    assert to_sympy(p ** 3) == sympy.expand(to_sympy(p) ** 3)
    assert to_sympy(p * 7) == sympy.expand(7 * to_sympy(p))
    assert to_sympy(p * Fraction(2, 3)) == sympy.expand(to_sympy(p) * sympy.Rational(2, 3))
    assert (p ** 0).is_constant() and (p ** 0).constant_value() == 1


def test_exact_division():
    p = MultiPoly.parse("a^2 - b^2", VARS)
    q = MultiPoly.parse("a + b", VARS)
    assert (p * q) / q == p
    with pytest.raises(ExactDivisionError):
        _ = p / MultiPoly.parse("c", VARS)


def test_derivative_matches_sympy():
    rng = random.Random(77)
    for _ in range(20):
        p = random_poly(rng)
        for name, sym in zip(VARS, SYMS):
            assert sympy.expand(
                to_sympy(p.derivative(name)) - sympy.diff(to_sympy(p), sym)
            ) == 0


def test_evaluate_matches_sympy():
    rng = random.Random(13)
    for _ in range(20):
        p = random_poly(rng)
        point = {
            v: Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for v in VARS
        }
        ref = to_sympy(p).subs(
            {s: sympy.Rational(point[v].numerator, point[v].denominator)
             for v, s in zip(VARS, SYMS)}
        )
        got = p.evaluate(point)
        assert got == Fraction(int(ref.p), int(ref.q))


def test_substitute_matches_sympy():
    rng = random.Random(23)
    for _ in range(15):
        p = random_poly(rng, max_terms=4, max_exp=2)
        images = {
            "a": random_poly(rng, max_terms=2, max_exp=2),
            "b": random_poly(rng, max_terms=2, max_exp=2),
        }
        got = p.substitute(images, variables=VARS)
        ref = to_sympy(p).subs(
            [(SYMS[0], to_sympy(images["a"])), (SYMS[1], to_sympy(images["b"]))],
            simultaneous=True,
        )
        assert sympy.expand(to_sympy(got) - ref) == 0


def test_substitute_alignment_rules():
    p = MultiPoly.parse("a + b", VARS)
    # an image over a foreign variable tuple is rejected
    with pytest.raises(AlignmentError):
        p.substitute({"a": MultiPoly.parse("x", ("x",))}, variables=VARS)
    # unmapped variables must exist in the target tuple
    with pytest.raises(AlignmentError):
        p.substitute({"a": MultiPoly.constant(("a",), 1)}, variables=("a",))
    # rational images are lifted
    q = p.substitute({"a": Fraction(1, 2)}, variables=VARS)
    assert q == MultiPoly.parse("1/2 + b", VARS)


def test_coefficient_extraction():
    p = MultiPoly.parse("a^2*b + 3*a*c - b + 4", VARS)
    inner = p.coefficient_of("a", 1)
    assert inner.variables == ("b", "c")
    assert inner == MultiPoly.parse("3*c", ("b", "c"))
    assert p.coefficient_of("a", 0) == MultiPoly.parse("-b + 4", ("b", "c"))
    assert p.degree_in("a") == 2
    assert p.total_degree() == 3


def test_unipoly_divmod_property():
    rng = random.Random(31)
    for _ in range(25):
        f = UniPoly([Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 7))])
        g = UniPoly([Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 5))])
        if g.is_zero():
            continue
        q, r = f.divmod(g)
        assert f == q * g + r
        assert r.is_zero() or r.degree < g.degree


def test_unipoly_degree_guard():
    with pytest.raises(DegreeBoundError):
        UniPoly([Fraction(0)] * 200 + [Fraction(1)])


def sylvester_det(f, g):
    # sympy.resultant silently reorders by degree, losing the
    # (-1)^(mn) swap sign; the Sylvester determinant pins the
    # convention without that ambiguity.
    n, m = f.degree, g.degree
    frow = [c for c in reversed(f.coeffs)]
    grow = [c for c in reversed(g.coeffs)]
    rows = []
    for i in range(m):
        rows.append([0] * i + frow + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + grow + [0] * (n - 1 - i))
    mat = sympy.Matrix(
        [[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows]
    )
    return mat.det()


def test_resultant_matches_sylvester_determinant():
    rng = random.Random(41)
    x = sympy.Symbol("x")
    checked_library = 0
    for _ in range(20):
        fc = [Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(2, 6))]
        gc = [Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(2, 6))]
        f, g = UniPoly(fc), UniPoly(gc)
        if f.is_zero() or g.is_zero() or f.degree == 0 or g.degree == 0:
            continue
        ref = sylvester_det(f, g)
        mine = resultant(f, g)
        assert mine == Fraction(int(ref.p), int(ref.q))
        if f.degree >= g.degree:
            # sympy agrees with the determinant when no reorder happens
            lib = sympy.resultant(
                sympy.Poly([c for c in reversed(fc)], x),
                sympy.Poly([c for c in reversed(gc)], x),
            )
            assert mine == Fraction(int(lib.p), int(lib.q))
            checked_library += 1
    assert checked_library > 0


def test_resultant_root_evaluation():
    # res(x - a, g) = g(a) fixes which argument contributes its roots
    g = UniPoly([Fraction(3), Fraction(-5), Fraction(-3), Fraction(-3)])
    for a in (Fraction(2), Fraction(-3, 2), Fraction(0)):
        linear = UniPoly([-a, Fraction(1)])
        assert resultant(linear, g) == g.evaluate(a)


def test_discriminant_matches_sympy():
    rng = random.Random(43)
    x = sympy.Symbol("x")
    for _ in range(20):
        fc = [Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(3, 7))]
        f = UniPoly(fc)
        if f.is_zero() or f.degree < 2:
            continue
        ref = sympy.discriminant(sympy.Poly([c for c in reversed(fc)], x))
        assert discriminant(f) == Fraction(int(ref.p), int(ref.q))


def test_jet_partials_match_sympy():
    rng = random.Random(53)
    tracked = ("a", "b")
    for _ in range(100):
        p = random_poly(rng, max_terms=5, max_exp=3)
        point = {
            v: Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for v in VARS
        }
        jet = jet_eval(p, point, tracked)
        subs = {
            s: sympy.Rational(point[v].numerator, point[v].denominator)
            for v, s in zip(VARS, SYMS)
        }
        assert jet.value == Fraction(str(to_sympy(p).subs(subs)))
        for i, name in enumerate(tracked):
            sym = SYMS[VARS.index(name)]
            ref = sympy.diff(to_sympy(p), sym).subs(subs)
            assert jet.partials[i] == Fraction(str(ref))


def test_jet_quotient_rule():
    num = Jet1(Fraction(3), (Fraction(1), Fraction(0)))
    den = Jet1(Fraction(2), (Fraction(0), Fraction(1)))
    q = num / den
    assert q.value == Fraction(3, 2)
    assert q.partials == (Fraction(1, 2), Fraction(-3, 4))
    with pytest.raises(ZeroDivisionError):
        num / Jet1(Fraction(0), (Fraction(1), Fraction(0)))
    assert (den ** -2).value == Fraction(1, 4)


def test_matrix_rank_matches_sympy():
    rng = random.Random(61)
    for _ in range(25):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        m = [
            [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
            for _ in range(rows)
        ]
        # plant a dependent row now and then
        if rows >= 2 and rng.random() < 0.4:
            m[-1] = [2 * c for c in m[0]]
        ref = sympy.Matrix(m).rank()
        assert rational_matrix_rank(m) == ref
    assert rational_matrix_rank([]) == 0
