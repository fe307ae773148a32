"""Fixed-width binary words and the bit-pattern queries the multipliers run on.

Everything downstream (encoders, partial-product generators, the cell-level
array) operates on :class:`Word` values, so width bookkeeping lives here and
nowhere else.  Bit positions are 1-indexed from the LSB throughout: position 1
has weight 2**0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Operand words entering a multiplier stay desk-checkable.  Shift/add results
# grow past 32 bits freely (a product needs 2x the operand width).
MIN_OPERAND_WIDTH = 4
MAX_OPERAND_WIDTH = 32

_VERILOG_RE = re.compile(r"^\s*(\d+)'([bdh])\s*([0-9a-fA-F_]+)\s*$")
_BASES = {"b": 2, "d": 10, "h": 16}


def check_operand_width(width: int) -> int:
    """Validate a multiplier operand width (4 to 32 bits)."""
    if not MIN_OPERAND_WIDTH <= width <= MAX_OPERAND_WIDTH:
        raise ValueError(
            f"operand width must be in [{MIN_OPERAND_WIDTH}, {MAX_OPERAND_WIDTH}], got {width}"
        )
    return width


@dataclass(frozen=True, slots=True)
class Word:
    """Unsigned bit pattern with an explicit width.

    The value is masked to ``width`` bits at construction, so ``bits <
    2**width`` always holds.  Words are immutable; operations return new
    instances, and widening operations (shift, add) grow the width instead of
    truncating so products keep their headroom.
    """

    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.bits < 0:
            raise ValueError(f"bits must be non-negative, got {self.bits}")
        object.__setattr__(self, "bits", self.bits & ((1 << self.width) - 1))

    # -- queries ---------------------------------------------------------

    def bit(self, position: int) -> int:
        """Bit at 1-indexed ``position`` (LSB = 1)."""
        if not 1 <= position <= self.width:
            raise IndexError(f"position {position} out of range for width {self.width}")
        return (self.bits >> (position - 1)) & 1

    def popcount(self) -> int:
        """Number of set bits."""
        return self.bits.bit_count()

    def one_positions(self) -> list[int]:
        """Ascending 1-indexed positions of the set bits (empty for zero)."""
        return [i + 1 for i in range(self.width) if (self.bits >> i) & 1]

    @property
    def msb_set(self) -> bool:
        return bool((self.bits >> (self.width - 1)) & 1)

    # -- arithmetic ------------------------------------------------------

    def shift_left(self, amount: int) -> "Word":
        """Shift left by ``amount``; the width grows so no bit is dropped."""
        if amount < 0:
            raise ValueError(f"shift amount must be >= 0, got {amount}")
        return Word(self.bits << amount, self.width + amount)

    def __lshift__(self, amount: int) -> "Word":
        return self.shift_left(amount)

    def __add__(self, other: "Word") -> "Word":
        # One extra bit of headroom guarantees the sum never wraps.
        return Word(self.bits + other.bits, max(self.width, other.width) + 1)

    def __int__(self) -> int:
        return self.bits

    # -- text forms ------------------------------------------------------

    def binary(self) -> str:
        return f"{self.width}'b{self.bits:0{self.width}b}"

    def decimal(self) -> str:
        return f"{self.width}'d{self.bits}"

    def hexadecimal(self) -> str:
        digits = (self.width + 3) // 4
        return f"{self.width}'h{self.bits:0{digits}x}"

    def __str__(self) -> str:
        return self.binary()

    @classmethod
    def parse(cls, text: str, width: int | None = None) -> "Word":
        """Parse a word from text.

        Accepts width-explicit forms ("8'b00100010", "8'd34", "8'h22") and
        plain Python literals ("0b100010", "0x22", "34"), the latter needing
        the ``width`` argument.  An explicit width in the text wins over the
        argument only if the two agree.
        """
        m = _VERILOG_RE.match(text)
        if m:
            w = int(m.group(1))
            value = int(m.group(3).replace("_", ""), _BASES[m.group(2)])
            if width is not None and width != w:
                raise ValueError(f"width {width} conflicts with textual width {w} in {text!r}")
        else:
            try:
                value = int(text.strip(), 0)
            except ValueError:
                raise ValueError(f"cannot parse word from {text!r}") from None
            if width is None:
                raise ValueError(f"no width given for plain literal {text!r}")
            w = width
        if value >= 1 << w:
            raise ValueError(f"value {value} does not fit in {w} bits")
        return cls(value, w)


@dataclass(frozen=True, slots=True)
class SignMag:
    """Sign-magnitude pair: the unsigned encoding core sees only the magnitude.

    ``sign`` is +1 or -1; a zero magnitude always carries sign +1.
    """

    sign: int
    magnitude: Word

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.magnitude.bits == 0 and self.sign != 1:
            raise ValueError("zero magnitude must carry sign +1")

    @property
    def value(self) -> int:
        return self.sign * self.magnitude.bits

    def __int__(self) -> int:
        return self.value


def to_sign_magnitude(value: int, width: int) -> SignMag:
    """Decompose a signed integer into sign and width-bit magnitude.

    Raises OverflowError when ``|value| >= 2**width``.
    """
    magnitude = abs(value)
    if magnitude >= 1 << width:
        raise OverflowError(f"|{value}| does not fit in {width} bits")
    return SignMag(1 if value >= 0 else -1, Word(magnitude, width))
