import pytest

from ohmw_sim import LaserSpec, ProfileKind, load_species, polarizability_full


@pytest.fixture(scope="session")
def atom():
    return load_species()


@pytest.fixture(scope="session")
def laser():
    """Reference setup: 50 W CO2 laser, 100 um waist, Gaussian profile."""
    return LaserSpec(wavelength=10.6e-6, power=50.0, waist=100e-6)


@pytest.fixture(scope="session")
def sg_laser():
    """Flattened variant of the reference beam (super-Gaussian, order 2)."""
    return LaserSpec(
        wavelength=10.6e-6,
        power=50.0,
        waist=100e-6,
        profile=ProfileKind(kind="super_gaussian", order=2),
    )


@pytest.fixture(scope="session")
def alpha(atom, laser):
    return polarizability_full(atom, laser.omega_L, laser.peak_amplitude)
