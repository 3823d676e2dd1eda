class PrevkitError(Exception):
    pass


class InvalidParameter(PrevkitError, ValueError):
    """
    A value violates a domain invariant, for instance a probability outside
    [0, 1] or a sample larger than its population.
    """
    pass


class ConfigurationError(PrevkitError):
    """
    Raised for unusable command line flags, config file entries or run
    configurations. The message names the offending flag.
    """
    pass
