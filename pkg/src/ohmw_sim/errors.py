"""Exception types shared across the package."""


class PhysicsDomainError(ValueError):
    """A physically meaningless input (e.g. exact resonance with zero width)."""


class ConfigError(ValueError):
    """Malformed or inconsistent configuration / data file."""
