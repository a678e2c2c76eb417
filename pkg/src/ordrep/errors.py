"""Exception types raised by ordrep."""


class OrdrepError(Exception):
    """Base class for all ordrep errors."""


class DuplicateLabel(OrdrepError, ValueError):
    pass


class UnknownLabel(OrdrepError, KeyError):
    def __str__(self):
        return f"unknown label: {self.args[0]!r}"


class CycleDetected(OrdrepError, ValueError):
    """The input pairs contain a directed cycle; ``cycle`` lists its labels."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("order pairs contain a cycle: " + " < ".join(self.cycle + self.cycle[:1]))


class NotTransitive(OrdrepError, ValueError):
    def __init__(self, x, y, z):
        self.witness = (x, y, z)
        super().__init__(f"relation is not transitive: {x} < {y} < {z} but not {x} < {z}")


class IndexOutOfRange(OrdrepError, IndexError):
    pass


class EmptyPoset(OrdrepError, ValueError):
    pass


class EmptySubset(OrdrepError, ValueError):
    pass


class DepthTooLarge(OrdrepError, ValueError):
    pass


class InvalidDepths(OrdrepError, ValueError):
    pass


class NotApplicable(OrdrepError, ValueError):
    pass


class NotSeparablePair(OrdrepError, ValueError):
    pass


class PosetTooLarge(OrdrepError, ValueError):
    pass


class AntichainExplosion(OrdrepError, RuntimeError):
    pass


class MalformedSolverOutput(OrdrepError, ValueError):
    pass
