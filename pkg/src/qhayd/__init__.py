"""qhayd: exact computer algebra for quasi-Hopf algebras and their
anti-Yetter-Drinfeld module structures.

Everything is computed over exact fields (arbitrary-precision rationals or
prime fields); there is no floating point anywhere in the package.
"""

from .fields import QQ, PrimeField

__all__ = ["QQ", "PrimeField"]

__version__ = "0.1.0"
