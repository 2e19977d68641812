"""PTL separability of regular and context-free languages."""

from ._core import (
    Error,
    Language,
    contains_pattern,
    diagonal,
    diagonal_via_sup,
    downward_closure,
    ideals,
    is_ptl,
    separate,
    simon_equiv,
    sup,
    sup_via_separability,
    validate,
)

Error.kind = property(lambda self: self.args[0])
Error.__str__ = lambda self: f"{self.args[0]}: {self.args[1]}" if len(self.args) == 2 else super(Error, self).__str__()

__all__ = [
    "Error",
    "Language",
    "contains_pattern",
    "diagonal",
    "diagonal_via_sup",
    "downward_closure",
    "ideals",
    "is_ptl",
    "separate",
    "simon_equiv",
    "sup",
    "sup_via_separability",
    "validate",
]
