"""Error taxonomy shared by the whole package.

Four flavours, mirroring the contracts of the public operations:

* ``StructuralError``  -- shapes or algebras do not match.
* ``PreconditionError`` -- an input fails a stated precondition
  (non-hermitian where hermitian is required, ...).
* ``DomainError``      -- a functional-calculus map is applied outside
  its domain (fractional power of a non-positive element).
* ``UsageError``       -- the call itself is malformed (unknown
  descriptor, wrong arity, invalid exponent).
"""


class StructuralError(ValueError):
    """Block shapes or algebras are inconsistent."""


class PreconditionError(ValueError):
    """An operand violates a documented precondition."""


class DomainError(ValueError):
    """A scalar map was applied outside its domain."""


class UsageError(ValueError):
    """The operation was invoked with malformed arguments."""
