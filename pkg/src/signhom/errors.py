"""Exception types shared across the package."""


class SignHomError(Exception):
    """Base class for all errors raised by signhom."""


class ParseError(SignHomError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotBipartite(SignHomError, ValueError):
    """The underlying graph has an odd cycle; ``cycle`` is the witness."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"graph is not bipartite, odd cycle {list(self.cycle)}")


class NotWeaklyBalanced(SignHomError, ValueError):
    """Some closed walk of unicoloured edges has an odd number of red edges."""

    def __init__(self, walk):
        self.walk = walk
        super().__init__(f"graph is not weakly balanced, odd red closed walk {list(walk.walk)}")


class UnsupportedShape(SignHomError, ValueError):
    pass


class NotNormalized(SignHomError, ValueError):
    pass


class BadSeed(SignHomError, ValueError):
    """A seed pair set cannot be extended (not closed, has a circuit, ...)."""

    def __init__(self, message, circuit=None):
        self.circuit = circuit
        super().__init__(message)


class ConflictingPair(SignHomError, ValueError):
    """Domination closure reached both ``(x, y)`` and ``(y, x)``."""

    def __init__(self, pair, path_forward, path_backward):
        self.pair = pair
        self.path_forward = tuple(path_forward)
        self.path_backward = tuple(path_backward)
        super().__init__(f"closure contains both {pair} and its reverse")


class InvertiblePairFound(SignHomError):
    """No min ordering exists; ``certificate`` is an InvertiblePairCertificate."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(f"invertible pair {certificate.pair}")


class InternalInvariantViolation(SignHomError, AssertionError):
    """An invariant guaranteed by the underlying theory failed: an implementation bug."""


class CapExceeded(SignHomError, ValueError):
    pass


class NotPolynomial(SignHomError, ValueError):
    """The template has no special min ordering; ``result`` is its classification."""

    def __init__(self, result):
        self.result = result
        super().__init__(f"template is not polynomial ({result.verdict.value})")
