class DimensionError(ValueError):
    """Operands live in different ambient dimensions, or a size cap was hit."""


class ImproperFunctionError(ValueError):
    """The function has an empty effective domain."""


class NotHomogeneousError(ValueError):
    """Input failed the sampled positive-homogeneity check."""


class NonRepresentableError(ValueError):
    """A black-box oracle is not induced by any map of the expected form."""


class AuditError(NonRepresentableError):
    """A sampled audit refuted a property the oracle was claimed to have."""
