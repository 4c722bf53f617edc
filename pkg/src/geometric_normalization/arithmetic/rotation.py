"""
Rotation Numbers - ω and λ = e^{2πiω} computed at working precision
"""

import logging
from typing import Any, Optional

from mpmath import mp

from geometric_normalization.arithmetic.continued_fraction import ContinuedFraction, golden_mean

logger = logging.getLogger(__name__)


class RotationNumber:
    """
    A rotation number known symbolically, evaluated lazily at the current precision.

    The base value is the golden mean, a continued fraction or a decimal
    string; ``multiplier`` and ``divisor`` record the doubling and halving
    used by the odd constructions. Values are reduced modulo 1.
    """

    __slots__ = ("kind", "cf", "text", "multiplier", "divisor")

    def __init__(self, kind: str, cf: Optional[ContinuedFraction] = None, text: str = "",
                 multiplier: int = 1, divisor: int = 1):
        if kind not in ("golden", "cf", "decimal"):
            raise ValueError(f"Unknown rotation number kind '{kind}'")
        if kind == "cf" and cf is None:
            raise ValueError("A continued fraction is required")
        if kind == "decimal":
            value = mp.mpf(text)
            if value == mp.floor(value):
                raise ValueError(f"Rotation number {text} is an integer")
        if multiplier < 1 or divisor < 1:
            raise ValueError("multiplier and divisor must be positive")
        self.kind = kind
        self.cf = cf
        self.text = text
        self.multiplier = multiplier
        self.divisor = divisor

    @classmethod
    def golden(cls) -> "RotationNumber":
        return cls("golden")

    @classmethod
    def from_cf(cls, cf: ContinuedFraction) -> "RotationNumber":
        return cls("cf", cf=cf)

    @classmethod
    def from_decimal(cls, text: str) -> "RotationNumber":
        return cls("decimal", text=str(text))

    @classmethod
    def parse(cls, text: str) -> "RotationNumber":
        """Parse "golden", "cf:2,1,43" or a decimal, optionally suffixed by "/d" or "*m"."""
        text = text.strip()
        multiplier, divisor = 1, 1
        if "/" in text:
            head, tail = text.rsplit("/", 1)
            if tail.strip().isdigit():
                text, divisor = head, int(tail)
        if "*" in text:
            text, factor = text.rsplit("*", 1)
            multiplier = int(factor)
        if text == "golden":
            base = cls.golden()
        elif text.startswith("cf:"):
            quotients = tuple(int(part) for part in text[3:].split(",") if part.strip())
            base = cls.from_cf(ContinuedFraction(quotients))
        else:
            base = cls.from_decimal(text)
        return cls(base.kind, base.cf, base.text, multiplier, divisor)

    def _base_value(self) -> Any:
        if self.kind == "golden":
            return golden_mean()
        if self.kind == "cf":
            return self.cf.value()
        return mp.mpf(self.text)

    @property
    def value(self) -> Any:
        """ω in [0, 1) at the current precision."""
        raw = self._base_value() * self.multiplier / self.divisor
        return raw - mp.floor(raw)

    @property
    def lam(self) -> Any:
        """λ = e^{2πiω}, evaluated with 64 extra bits and rounded to the working precision."""
        with mp.extraprec(64):
            value = mp.expjpi(2 * self.value)
        return +value

    def halved(self) -> "RotationNumber":
        return RotationNumber(self.kind, self.cf, self.text, self.multiplier, self.divisor * 2)

    def doubled(self) -> "RotationNumber":
        return RotationNumber(self.kind, self.cf, self.text, self.multiplier * 2, self.divisor)

    def required_precision(self) -> int:
        if self.cf is None:
            return 64
        return self.cf.required_precision()

    def __str__(self) -> str:
        if self.kind == "golden":
            base = "golden"
        elif self.kind == "cf":
            base = "cf:" + ",".join(str(r) for r in self.cf.quotients)
        else:
            base = self.text
        if self.multiplier != 1:
            base += f"*{self.multiplier}"
        if self.divisor != 1:
            base += f"/{self.divisor}"
        return base

    def __repr__(self) -> str:
        return f"RotationNumber('{self}')"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RotationNumber) and str(self) == str(other)

    def __hash__(self) -> int:
        return hash(str(self))


def as_rotation_number(omega: Any) -> RotationNumber:
    """Accept a RotationNumber, a ContinuedFraction, a string or a real."""
    if isinstance(omega, RotationNumber):
        return omega
    if isinstance(omega, ContinuedFraction):
        return RotationNumber.from_cf(omega)
    if isinstance(omega, str):
        return RotationNumber.parse(omega)
    return RotationNumber.from_decimal(mp.nstr(mp.mpf(omega), mp.dps + 5))
