from fractions import Fraction

import pytest
from hypothesis import strategies as st

import lvwaves as lv

# bounded positive rationals, exact by construction
positive_rationals = st.fractions(
    min_value=Fraction(1, 32), max_value=Fraction(32), max_denominator=32
)

# dyadic rationals: float products of a few of these stay exact, so the
# exact-vs-float comparisons are meaningful at the 1 ulp level
dyadic_rationals = st.builds(
    Fraction,
    st.integers(min_value=1, max_value=512),
    st.sampled_from([1, 2, 4, 8, 16]),
)


@st.composite
def two_species_params(draw):
    return lv.TwoSpeciesParams(
        d1=draw(positive_rationals),
        d2=draw(positive_rationals),
        sigma1=draw(positive_rationals),
        sigma2=draw(positive_rationals),
        c11=draw(positive_rationals),
        c12=draw(positive_rationals),
        c21=draw(positive_rationals),
        c22=draw(positive_rationals),
    )


@st.composite
def strong_two_species_params(draw):
    """Constructively strong-competition parameters (no filtering)."""
    sigma1 = draw(positive_rationals)
    sigma2 = draw(positive_rationals)
    c11 = draw(positive_rationals)
    c22 = draw(positive_rationals)
    gap1 = draw(positive_rationals)
    gap2 = draw(positive_rationals)
    return lv.TwoSpeciesParams(
        d1=draw(positive_rationals),
        d2=draw(positive_rationals),
        sigma1=sigma1,
        sigma2=sigma2,
        c11=c11,
        c22=c22,
        c21=(sigma2 * c11 / sigma1) * (1 + gap1),
        c12=(sigma1 * c22 / sigma2) * (1 + gap2),
    )


@pytest.fixture(scope="session")
def paper_free():
    one = Fraction(1)
    return lv.FreeParams(
        k1=one, k2=one, d1=one, d2=one, d3=one,
        theta=Fraction(3), sigma1=Fraction(41), sigma2=Fraction(41), sigma3=Fraction(41),
    )


@pytest.fixture(scope="session")
def paper_spec(paper_free):
    return lv.induce_coefficients(paper_free)


@pytest.fixture(scope="session")
def strong_params():
    one = Fraction(1)
    return lv.TwoSpeciesParams(
        d1=one, d2=one, sigma1=one, sigma2=one,
        c11=one, c12=Fraction(2), c21=Fraction(3), c22=one,
    )


@pytest.fixture(scope="session")
def weak_params():
    one = Fraction(1)
    return lv.TwoSpeciesParams(
        d1=one, d2=one, sigma1=one, sigma2=one,
        c11=one, c12=Fraction(1, 2), c21=Fraction(2, 3), c22=one,
    )


@pytest.fixture(scope="session")
def demo_two_wave():
    # sigma1 > 8 d1 keeps the two-species tanh wave feasible
    return lv.two_species_wave_family(
        Fraction(2), Fraction(1), Fraction(20), Fraction(1)
    )
