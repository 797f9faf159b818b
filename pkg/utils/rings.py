"""Coefficient rings: the integers and the integers modulo n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from utils.errors import LpaError


class RingError(LpaError, ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """ZZ when modulus is None, ZZ/n otherwise (n >= 2)."""

    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.modulus is not None and self.modulus < 2:
            raise RingError(f"modulus must be >= 2, got {self.modulus}")

    @property
    def kind(self) -> str:
        return "INTEGERS" if self.modulus is None else "INTEGERS_MOD"

    def normalize(self, c: int) -> int:
        return c if self.modulus is None else c % self.modulus

    def add(self, a: int, b: int) -> int:
        return self.normalize(a + b)

    def mul(self, a: int, b: int) -> int:
        return self.normalize(a * b)

    def neg(self, a: int) -> int:
        return self.normalize(-a)

    def is_zero(self, a: int) -> bool:
        return self.normalize(a) == 0

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return self.normalize(1)

    def signed(self, c: int) -> int:
        """Representative used for printing: ZZ/n prints in (-n/2, n/2]."""
        if self.modulus is None:
            return c
        c = c % self.modulus
        return c - self.modulus if c > self.modulus // 2 else c

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"Zmod:{self.modulus}"


INTEGERS = RingSpec()


def parse_ring(text: str) -> RingSpec:
    """Parse `Z` or `Zmod:n`."""
    text = text.strip()
    if text == "Z":
        return INTEGERS
    if text.startswith("Zmod:"):
        try:
            n = int(text[len("Zmod:"):])
        except ValueError:
            raise RingError(f"bad modulus in ring '{text}'")
        return RingSpec(n)
    raise RingError(f"unknown ring '{text}' (expected Z or Zmod:n)")
