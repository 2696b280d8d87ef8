import pytest
from hypothesis import given, strategies as st

from e2orbits.errors import InvalidParameter, ParseError, RingMismatch
from e2orbits.ring import (
    Form,
    QuadInt,
    elements_up_to_norm,
    gaussian_order,
    half_to_sqrt_partner,
    make_ring,
    norm_sq,
    parse_element,
    parse_ring,
    pell_fundamental,
    qi_add,
    qi_conj,
    qi_mul,
    qi_neg,
)

from oracles import binomial_power_sqrt, disc_brute, pell_brute

RINGS = [make_ring(f, D) for f in ("sqrt", "half") for D in (1, 2, 3, 4, 5, 7, 9)]

coord = st.integers(-10**6, 10**6)
rings = st.sampled_from(RINGS)


@st.composite
def elem_pair(draw):
    R = draw(rings)
    return R(draw(coord), draw(coord)), R(draw(coord), draw(coord))


def test_make_ring():
    assert make_ring("sqrt", 4) == gaussian_order(2)
    assert make_ring(Form.SQRT, 1).describe_w() == "i"
    assert make_ring("half", 3).describe_w() == "(1+sqrt(-11))/2"
    with pytest.raises(InvalidParameter):
        make_ring("sqrt", 0)
    with pytest.raises(InvalidParameter):
        make_ring("cube", 2)


def test_add_sub_neg():
    R = make_ring("sqrt", 3)
    x = R(1, 1)
    assert qi_add(x, R(2, -3)) == R(3, -2)
    assert qi_add(x, qi_neg(x)) == R.zero
    assert R.zero + R(5, 1) == R(5, 1)
    with pytest.raises(RingMismatch):
        x + make_ring("sqrt", 2)(1, 1)


def test_mul_examples():
    R = make_ring("sqrt", 2)
    assert qi_mul(R(1, 1), R(1, -1)) == R(3)
    for D in (1, 2, 3, 10):
        H = make_ring("half", D)
        assert H.w * H.w == H(-D, 1)
    Z2 = gaussian_order(2)
    assert Z2(3, 1) * Z2(1, -1) == Z2(7, -2)
    with pytest.raises(RingMismatch):
        qi_mul(R(1), make_ring("half", 2)(1))


def test_conj_and_norm_examples():
    S = make_ring("sqrt", 7)
    assert qi_conj(S(3, 2)) == S(3, -2)
    H = make_ring("half", 3)
    assert qi_conj(H(2, 1)) == H(3, -1)
    assert norm_sq(gaussian_order(2)(3, 1)) == 13
    assert norm_sq(H(2, 1)) == 9
    assert norm_sq(H.zero) == 0


@given(elem_pair())
def test_norm_multiplicative(xy):
    x, y = xy
    assert norm_sq(x * y) == norm_sq(x) * norm_sq(y)


@given(elem_pair())
def test_conj_is_ring_homomorphism(xy):
    x, y = xy
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x
    xx = x * x.conj()
    assert xx.b == 0 and xx.a == norm_sq(x)


def test_big_powers_exact():
    # (1+w)^k against the binomial theorem; coordinates exceed 1000 digits
    for D in (5, 7):
        R = make_ring("sqrt", D)
        p = R.one
        for _ in range(3000):
            p = p * R(1, 1)
        a, b = binomial_power_sqrt(D, 3000)
        assert (p.a, p.b) == (a, b)
        assert len(str(abs(p.a))) > 1000
        assert norm_sq(p) == (1 + D) ** 3000


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_norm_disc_matches_box_scan(R):
    got = elements_up_to_norm(R, 60, include_zero=True)
    want = sorted(disc_brute(R, 60), key=lambda x: (x.norm_sq(), x.a, x.b))
    assert got == want


def test_pell_examples():
    assert (pell_fundamental(2).x, pell_fundamental(2).y) == (3, 2)
    assert (pell_fundamental(3).x, pell_fundamental(3).y) == (2, 1)
    assert pell_fundamental(4) is None
    with pytest.raises(InvalidParameter):
        pell_fundamental(0)


@pytest.mark.parametrize("D", range(1, 51))
def test_pell_against_brute_force(D):
    sol = pell_fundamental(D)
    want = pell_brute(D)
    if want is None:
        assert sol is None
    else:
        assert (sol.x, sol.y) == want
        assert sol.x ** 2 - D * sol.y ** 2 == 1


def test_pell_large_period():
    sol = pell_fundamental(61)
    assert (sol.x, sol.y) == (1766319049, 226153980)


def test_half_partner():
    assert [half_to_sqrt_partner(D) for D in (1, 2, 3)] == [3, 7, 11]


@pytest.mark.parametrize(
    "text,coords",
    [("3+2*w", (3, 2)), ("-1", (-1, 0)), ("0-1*w", (0, -1)), (" 4 - 3 * w ", (4, -3)), ("w", (0, 1)),
     ("-w+2", (2, -1)), ("7w", (0, 7))],
)
def test_parse_element(text, coords):
    assert parse_element(gaussian_order(2), text).coords == coords


@pytest.mark.parametrize("bad", ["", "3+", "2*x", "1..2", "+-1", "3 4"])
def test_parse_element_rejects(bad):
    with pytest.raises(ParseError):
        parse_element(gaussian_order(2), bad)


@given(rings, coord, coord)
def test_element_round_trip(R, a, b):
    x = R(a, b)
    assert parse_element(R, str(x)) == x


def test_ring_round_trip():
    for R in RINGS:
        assert parse_ring(str(R)) == R
    with pytest.raises(ParseError):
        parse_ring("sqrt:-3")


def test_values_are_immutable():
    x = gaussian_order(2)(1, 1)
    with pytest.raises(AttributeError):
        x.a = 5
    assert isinstance(x, QuadInt) and hash(x) == hash(gaussian_order(2)(1, 1))
