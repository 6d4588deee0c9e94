# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

class ValidationError(Exception):
    pass


class HeckeGridError(Exception):
    pass


class PrecisionError(HeckeGridError):
    """Requested coefficients lie outside the known window."""


class TickError(HeckeGridError):
    """Series denominators do not match or cannot be converted."""


class IntegralityError(HeckeGridError):
    """A coefficient is not integral where integrality is required."""


class DomainError(HeckeGridError):
    """Input lies outside the domain of an operation."""


class ConstructionError(HeckeGridError):
    """A ladder rung could not be reduced to its normal form."""


class MissingRungError(HeckeGridError):
    pass
