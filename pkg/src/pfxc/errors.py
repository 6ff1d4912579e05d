"""Exception hierarchy shared by all pfxc modules."""


class PfxcError(Exception):
    """Base class for pfxc errors."""


class EmptyDistributionError(PfxcError):
    """All counts are zero, or the input to compress is empty."""


class InfeasibleLimitError(PfxcError):
    """Length limit L does not satisfy L > ceil(log2 n)."""


class ParameterError(PfxcError):
    """Codec parameter (epsilon or c) outside its valid range."""


class KraftViolationError(PfxcError):
    """A length assignment breaks the Kraft inequality."""


class CorruptStreamError(PfxcError):
    """Bit window does not begin with a valid codeword."""


class FormatError(PfxcError):
    """Container magic/version mismatch or malformed model blob."""


class TruncatedPayloadError(FormatError):
    """Container payload ends before the recorded symbol count."""


class BoundViolationError(PfxcError):
    """A built codec failed its own redundancy bound self-check."""
