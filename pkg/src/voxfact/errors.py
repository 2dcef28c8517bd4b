"""Shared error types."""


class VoxfactError(Exception):
    """Base class for domain and configuration errors."""


class EqualModuli(VoxfactError):
    """Two insertion points share a modulus on the numeric radial path."""


class DomainViolation(VoxfactError):
    """A configuration leaves the region where an expansion is valid."""


class NotASubset(VoxfactError):
    """Carrier extension requested into a set that does not contain it."""


class NotDisjoint(VoxfactError):
    """Disjointness required (carriers or supports) but not satisfied."""


class ExpansionDomainMismatch(VoxfactError):
    """A contour or jet sits where the exact expansion is undecidable."""


class NonConvergent(VoxfactError):
    """An adaptive degree sum failed to meet tolerance at the hard cap."""


class UsageError(VoxfactError):
    """Bad command-line or configuration input."""
