"""AST for Sweedler-notation expressions.

An expression is a sum of tensor terms; a term is a list of factors
separated by "(x)"; a factor is a juxtaposition product of atoms.
Coproduct superscripts are binary bracketing addresses (strings over
{1,2}); instance labels written "_k" group occurrences that belong to one
coproduct expansion, one associator triple, or one coaction application.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

__all__ = [
    "ScalarAtom",
    "SymbolAtom",
    "WrapperAtom",
    "EpsAtom",
    "CoactionAtom",
    "Term",
    "ExprSum",
    "ContextVar",
    "CoactionDecl",
    "Context",
    "SwdDocument",
]

# symbol kinds
VAR = "var"
PHI = "phi"          # components X, Y, Z
PHI_INV = "phi_inv"  # components P, Q, R
ALPHA = "alpha"
BETA = "beta"
ONE = "one"

PHI_SLOTS = {"X": 0, "Y": 1, "Z": 2}
PHI_INV_SLOTS = {"P": 0, "Q": 1, "R": 2}


@dataclass(frozen=True)
class ScalarAtom:
    num: int
    den: int = 1


@dataclass(frozen=True)
class SymbolAtom:
    kind: str          # var | phi | phi_inv | alpha | beta | one
    name: str          # variable name or component letter; "" for constants
    label: str = ""    # instance label
    path: str = ""     # coproduct address over {1,2}; "" = the element itself


@dataclass(frozen=True)
class WrapperAtom:
    op: str            # S | S2 | Sinv
    arg: tuple         # product of atoms, algebra-sorted


@dataclass(frozen=True)
class EpsAtom:
    arg: tuple


@dataclass(frozen=True)
class CoactionAtom:
    kind: str          # rho | lam
    leg: int           # 0 (module part) or 1 (algebra part)
    arg: tuple         # module-sorted product, shared across the pairing label
    label: str
    path: str = ""     # only meaningful on leg 1


@dataclass(frozen=True)
class Term:
    sign: int
    factors: tuple     # tuple of atom tuples


@dataclass(frozen=True)
class ExprSum:
    terms: tuple


@dataclass(frozen=True)
class ContextVar:
    name: str
    sort: str                      # "algebra" | "module"
    module: Optional[str] = None   # module name for module-sorted variables


@dataclass(frozen=True)
class CoactionDecl:
    kind: str      # "rho" | "lam"
    module: str


@dataclass(frozen=True)
class Context:
    variables: tuple   # of ContextVar, in declaration order
    coactions: tuple   # of CoactionDecl

    def var(self, name: str) -> Optional[ContextVar]:
        for v in self.variables:
            if v.name == name:
                return v
        return None

    def coaction(self, kind: str) -> Optional[CoactionDecl]:
        for c in self.coactions:
            if c.kind == kind:
                return c
        return None


@dataclass(frozen=True)
class SwdDocument:
    context: Context
    lhs: ExprSum
    rhs: Optional[ExprSum]   # None for expression-only files
