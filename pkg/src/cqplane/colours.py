"""Colour parameters: formal symbols (λ, μ, ν, ...) and exact rational constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

GREEK = {"l": "\\lambda", "m": "\\mu", "n": "\\nu", "k": "\\kappa", "r": "\\rho"}
UNICODE = {"l": "λ", "m": "μ", "n": "ν", "k": "κ", "r": "ρ"}


@dataclass(frozen=True)
class Colour:
    """A colour label.

    Either a declared symbol (``name`` and declaration ``index``) or an exact
    rational constant (``value``).  Constants sort before symbols; constants
    by value, symbols by declaration index.
    """

    name: Optional[str] = None
    index: int = -1
    value: Optional[Fraction] = None

    @classmethod
    def symbol(cls, name: str, index: int) -> "Colour":
        return cls(name=name, index=index)

    @classmethod
    def const(cls, value: Union[int, str, Fraction]) -> "Colour":
        return cls(value=Fraction(value))

    @property
    def is_symbol(self) -> bool:
        return self.value is None

    @property
    def key(self) -> tuple:
        if self.value is not None:
            return (0, self.value)
        return (1, self.index)

    def __lt__(self, other: "Colour") -> bool:
        return self.key < other.key

    def __le__(self, other: "Colour") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Colour") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Colour") -> bool:
        return self.key >= other.key

    def text(self) -> str:
        if self.value is not None:
            return str(self.value)
        return self.name

    def latex(self) -> str:
        if self.value is not None:
            v = self.value
            return str(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return GREEK.get(self.name, self.name)

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return UNICODE.get(self.name, self.name)

    def __repr__(self) -> str:
        return f"Colour({self.text()})"


LAMBDA = Colour.symbol("l", 0)
MU = Colour.symbol("m", 1)
NU = Colour.symbol("n", 2)
ZERO = Colour.const(0)


def declare(names) -> dict:
    """Map ASCII names to symbols, indexed by declaration order."""
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    out = {}
    for i, name in enumerate(names):
        if not name.isidentifier() or name in ("q", "h"):
            raise ValueError(f"invalid colour name {name!r}")
        if name in out:
            raise ValueError(f"duplicate colour name {name!r}")
        out[name] = Colour.symbol(name, i)
    return out


DEFAULT_COLOURS = declare("l,m,n")
