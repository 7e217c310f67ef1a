"""
Tests for the contraction symbols.
"""
import cmath
import numpy as np
import pytest
from discretization.problem import NeutralFamily, ParabolicFamily, WaveFamily
from theory.symbols import SymbolQuery, contraction_profile, contraction_symbol, predicted_rate, wave_number
from utils.exceptions import BranchFailure, ValidationError

FAMILIES = {
    "parabolic": (ParabolicFamily(a1=1.0, a2=2.3, nu=1.0), 1.5),
    "wave": (WaveFamily(c=1.0, lam=0.5), 3.0),
    "neutral": (NeutralFamily(mu=1.0, c=0.1, r=0.05, d=0.0025), 1.0),
}


def _query(method, name, theta, s, a=3.0, b=3.0, bounded=False):
    family, tau = FAMILIES[name]
    return SymbolQuery(method=method, family=family, a=a, b=b, theta=theta, s=s, tau=tau, bounded=bounded)


def _random_s(rng, count=100):
    return rng.uniform(1e-3, 10.0, count) + 1j * rng.uniform(-20.0, 20.0, count)


class TestSymmetricSymbols:
    """Test symbols on equal subdomains"""

    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_optimal_relaxation_vanishes(self, name, rng):
        """Test theta=1/2 (DNWR) and theta=1/4 (NNWR) give a zero symbol"""
        for s in _random_s(rng):
            assert abs(contraction_symbol(_query("dnwr", name, 0.5, s))) <= 1e-14
            assert abs(contraction_symbol(_query("nnwr", name, 0.25, s))) <= 1e-14

    @pytest.mark.parametrize("name", sorted(FAMILIES))
    @pytest.mark.parametrize("theta", [0.1, 0.3, 0.7])
    def test_linear_factor(self, name, theta, rng):
        """Test other theta give |1 - 2 theta| and |1 - 4 theta|"""
        for s in _random_s(rng, 20):
            assert abs(contraction_symbol(_query("dnwr", name, theta, s))) == pytest.approx(abs(1 - 2 * theta), abs=1e-14)
            assert abs(contraction_symbol(_query("nnwr", name, theta, s))) == pytest.approx(abs(1 - 4 * theta), abs=1e-14)

    def test_bounded_parabolic_symmetric(self):
        """Test the bounded parabolic symbol also vanishes for equal widths"""
        query = _query("dnwr", "parabolic", 0.5, 1.0 + 2.0j, bounded=True)

        assert contraction_symbol(query) == 0


class TestAsymmetricSymbols:
    """Test symbols on unequal subdomains"""

    def test_wave_dnwr_matches_exponential_form(self):
        """Test DNWR for the wave family against coth and tanh built from exponentials"""
        family = WaveFamily(c=1.0, lam=0.5)
        query = SymbolQuery(method="dnwr", family=family, a=4.0, b=2.0, theta=0.5, s=1.0, tau=3.0)

        sigma = cmath.sqrt(1.0 - 0.5 * cmath.exp(-3.0))
        coth_a = (cmath.exp(4 * sigma) + cmath.exp(-4 * sigma)) / (cmath.exp(4 * sigma) - cmath.exp(-4 * sigma))
        tanh_b = (cmath.exp(2 * sigma) - cmath.exp(-2 * sigma)) / (cmath.exp(2 * sigma) + cmath.exp(-2 * sigma))
        expected = 1 - 0.5 - 0.5 * coth_a * tanh_b

        assert abs(contraction_symbol(query) - expected) <= 1e-12

    @pytest.mark.parametrize("name", ["wave", "neutral"])
    def test_nnwr_symmetric_in_widths(self, name, rng):
        """Test NNWR is unchanged when the widths are swapped"""
        for s in _random_s(rng, 20):
            forward = contraction_symbol(_query("nnwr", name, 0.2, s, a=4.0, b=2.0))
            swapped = contraction_symbol(_query("nnwr", name, 0.2, s, a=2.0, b=4.0))
            assert forward == pytest.approx(swapped, rel=1e-12)

    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_large_s_limit(self, name):
        """Test symbols tend to the symmetric constants as Re(s) grows"""
        dnwr = contraction_symbol(_query("dnwr", name, 0.3, 1e6, a=4.0, b=2.0, bounded=True))
        nnwr = contraction_symbol(_query("nnwr", name, 0.1, 1e6, a=4.0, b=2.0, bounded=True))

        assert dnwr == pytest.approx(1 - 2 * 0.3)
        assert nnwr == pytest.approx(1 - 4 * 0.1)

    def test_unbounded_parabolic_ignores_widths(self):
        """Test the unbounded parabolic symbol is constant"""
        query = _query("dnwr", "parabolic", 0.3, 0.5 + 1.0j, a=4.0, b=2.0)

        assert contraction_symbol(query) == pytest.approx(0.4)

    def test_bounded_parabolic_asymmetric_is_small(self):
        """Test theta=1/2 on (0,4) and (4,6) gives a small symbol for the reaction case"""
        query = _query("dnwr", "parabolic", 0.5, 0.1, a=4.0, b=2.0, bounded=True)

        assert abs(contraction_symbol(query)) < 1e-2


class TestProfiles:
    """Test symbol profiles along vertical lines"""

    def test_profile_shape(self):
        """Test one magnitude per frequency"""
        query = _query("dnwr", "wave", 0.5, 1.0, a=4.0, b=2.0)

        profile = contraction_profile(query, 1.0, np.linspace(-5.0, 5.0, 11))

        assert profile.shape == (11,)
        assert np.all(profile >= 0)

    def test_predicted_rate_symmetric(self):
        """Test the predicted rate on equal widths is |1 - 2 theta|"""
        query = _query("dnwr", "neutral", 0.3, 1.0)

        assert predicted_rate(query, 0.5, np.linspace(-10.0, 10.0, 41)) == pytest.approx(0.4)


class TestSymbolErrors:
    """Test invalid symbol queries"""

    @pytest.mark.parametrize("s", [0.0, -1.0, 1j])
    def test_non_positive_real_part(self, s):
        """Test Re(s) <= 0 raises BranchFailure"""
        with pytest.raises(BranchFailure):
            contraction_symbol(_query("dnwr", "wave", 0.5, s, a=4.0, b=2.0))

    def test_unknown_method(self):
        """Test an unknown method is rejected"""
        with pytest.raises(ValidationError):
            _query("schwarz", "wave", 0.5, 1.0)

    def test_non_positive_width(self):
        """Test widths must be positive"""
        with pytest.raises(ValidationError):
            _query("dnwr", "wave", 0.5, 1.0, a=0.0)

    def test_wave_number_principal_branch(self):
        """Test the wave number has a non-negative real part"""
        family, tau = FAMILIES["parabolic"]

        assert wave_number(family, 2.0 + 3.0j, tau).real >= 0
