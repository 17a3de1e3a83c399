import pytest

from wildram.lubin_tate import (
    BaseRing,
    CertificateFailure,
    Kind,
    LTContext,
    construct_endomorphism,
    lt_compose_check,
    lt_endomorphism,
    lt_reduce,
    of_arith,
    of_valuation,
    parse_element,
    reduced_automorphism,
)
from wildram.nottingham import Automorphism, depth_i, i_sequence
from wildram.power_series import Series, is_exhausted

RAM = BaseRing(Kind.RAMIFIED, 3, 6)
UNR = BaseRing(Kind.UNRAMIFIED, 3, 6)


def el(ring, text):
    return parse_element(ring, text)


def test_ring_arithmetic():
    one, pi = RAM.one(), RAM.uniformizer()
    assert of_arith(one, pi, "*").coords == (0, 1)
    assert of_arith(pi, pi, "*").coords == (3, 0)
    assert of_arith(el(RAM, "3+2*pi"), pi, "/").coords == (2, 1)
    with pytest.raises(ArithmeticError):
        of_arith(el(RAM, "1+pi"), pi, "/")


def test_valuations():
    assert of_valuation(el(RAM, "pi")) == 1
    assert of_valuation(el(RAM, "p")) == 2
    assert of_valuation(el(UNR, "p")) == 1
    assert of_valuation(el(RAM, "1+pi") - RAM.one()) == 1
    assert of_valuation(el(RAM, "1+pi^2") - RAM.one()) == 2
    assert of_valuation(el(UNR, "1+p") - UNR.one()) == 1
    assert is_exhausted(of_valuation(RAM.zero()))


def test_beta_prime_valuation():
    b = el(UNR, "(1+p)*(1+zeta*p)^3")
    assert of_valuation(b - UNR.one()) == 1


def test_ramified_p2_excluded():
    with pytest.raises(ValueError):
        BaseRing(Kind.RAMIFIED, 2, 4)


@pytest.mark.parametrize("ring", [RAM, UNR, BaseRing(Kind.QP, 2, 6)], ids=str)
def test_pi_series_shape(ring):
    ctx = LTContext(ring, 40)
    f = ctx.pi_series
    assert f.coord(1) == ring.uniformizer().coords
    red = [ring.reduce_coords(f.coord(k)) for k in range(41)]
    res = ring.residue_field
    assert red == [res.one_coords() if k == ctx.q else res.zero_coords() for k in range(41)]


def test_trivial_endomorphisms():
    ctx = LTContext(RAM, 30)
    F1 = lt_endomorphism(ctx, RAM.one())
    assert F1.series == Series.identity(RAM, 30) and F1.certified
    assert lt_reduce(F1) == Automorphism.identity(RAM.residue_field, 30)
    Fpi = lt_endomorphism(ctx, RAM.uniformizer())
    assert Fpi.series == ctx.pi_series


def test_ramified_small_certificate():
    F = construct_endomorphism(Kind.RAMIFIED, 3, "1+pi", 30)
    assert F.certified and F.commutes
    assert depth_i(lt_reduce(F)) == 2


def test_non_wild_reduction_rejected():
    F = construct_endomorphism(Kind.RAMIFIED, 3, "2", 10)
    with pytest.raises(ValueError):
        lt_reduce(F)


def test_certificate_failure_when_budget_too_small():
    with pytest.raises(CertificateFailure):
        construct_endomorphism(Kind.UNRAMIFIED, 3, "1+p", 200, pdigits=1, max_pdigits=1)


def test_reduction_independent_of_pdigits():
    a = reduced_automorphism(Kind.UNRAMIFIED, 3, "1+zeta*p", 120, pdigits=4)
    b = reduced_automorphism(Kind.UNRAMIFIED, 3, "1+zeta*p", 120, pdigits=16)
    assert a == b


@pytest.mark.parametrize("p,r,N", [(3, 1, 100), (3, 2, 100), (2, 2, 300)])
def test_unramified_family(p, r, N):
    sigma = reduced_automorphism(Kind.UNRAMIFIED, p, f"1+p^{r}", N)
    vals = i_sequence(sigma, 3).values
    assert vals and vals == [p ** (2 * (r + n)) - 1 for n in range(len(vals))]


def test_unramified_p2_r1_follows_valuation_of_powers():
    # alpha = 3: v(alpha^2 - 1) = v(8) = 3, so i_1 jumps past 2^4 - 1
    sigma = reduced_automorphism(Kind.UNRAMIFIED, 2, "1+p", 300)
    vals = i_sequence(sigma, 2).values
    assert vals == [3, 63, 255]
    assert vals == [2 ** (2 * v) - 1 for v in (1, 3, 4)]


@pytest.mark.parametrize("r,N", [(1, 250), (2, 250)])
def test_ramified_family(r, N):
    sigma = reduced_automorphism(Kind.RAMIFIED, 3, f"1+pi^{r}", N)
    vals = i_sequence(sigma, 3).values
    assert len(vals) >= 2 and vals == [3 ** (r + 2 * n) - 1 for n in range(len(vals))]


def test_compose_checks():
    ctx = LTContext(BaseRing(Kind.UNRAMIFIED, 3, 8), 30)
    a = el(ctx.ring, "1+p")
    assert lt_compose_check(ctx, a, ctx.ring.one()).passed
    chk = lt_compose_check(ctx, a, el(ctx.ring, "1+zeta*p"))
    assert chk.passed and chk.lifted and chk.reduced
    rctx = LTContext(BaseRing(Kind.RAMIFIED, 3, 8), 40)
    assert lt_compose_check(rctx, el(rctx.ring, "1+pi"), el(rctx.ring, "1+pi^2")).passed
