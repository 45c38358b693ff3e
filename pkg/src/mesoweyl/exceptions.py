"""Package-wide error types."""


class TruncationError(RuntimeError):
    """A Fock-space computation failed to converge under its dimension cap."""


class SingularPointError(ValueError):
    """A ratio was requested at a point where its denominator vanishes."""


class IncommensurateError(ValueError):
    """Harmonic content is not commensurate with the requested base frequency."""
