"""Exception types shared by all modules."""


class KummerError(Exception):
    """Base class; carries an optional payload for reports."""

    def __init__(self, message="", **payload):
        super().__init__(message)
        self.payload = payload


class NotDivisor(KummerError):
    pass


class NonSemisimple(KummerError):
    pass


class CharacterNotTrivialOnK(KummerError):
    pass


class OutOfRange(KummerError):
    pass


class BadCharacteristic(KummerError):
    pass


class HypothesisViolated(KummerError):
    pass


class NotPrimitiveRoot(KummerError):
    pass


class ZeroSlot(KummerError):
    pass


class NotCoprime(KummerError):
    pass


class DegenerateNotWitness(KummerError):
    """Raised when b is a p-th power; `delta` is the algebra element with delta^p = 1."""

    def __init__(self, message="", delta=None, d=None, **payload):
        super().__init__(message, **payload)
        self.delta = delta
        self.d = d


class PrecisionExhausted(KummerError):
    pass


class ResidueCharP(KummerError):
    pass


class InvalidInstance(KummerError):
    pass


class BadOrder(KummerError):
    pass


class TooLarge(KummerError):
    pass
