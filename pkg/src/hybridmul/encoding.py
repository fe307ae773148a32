"""Multiplier encodings and the architecture dispatcher.

Three ways to turn (multiplicand, multiplier) into a product:

* conventional shift-and-add: one partial-product row per multiplier bit;
* radix-4 Booth recoding: one row per signed digit in {-2..+2};
* hybrid sparse encoding: multipliers with at most three set bits compile to
  a short shift/add chain (categories A-F keyed on popcount and the position
  of the lowest set bit), denser multipliers are split in half once and each
  half re-dispatched.

All encoders work on unsigned magnitudes; :func:`multiply` applies the
sign-magnitude glue around whichever core is selected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .bitnum import SignMag, Word, check_operand_width, to_sign_magnitude


class Architecture(enum.Enum):
    CONVENTIONAL = "conventional"
    BOOTH = "booth"
    HYBRID = "hybrid"

    def __str__(self) -> str:
        return self.value


class CategoryKind(enum.Enum):
    ZERO = "Zero"
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    SPLIT = "Split"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Category:
    """Classification of a multiplier bit pattern.

    Captured positions are 1-indexed from the LSB.  For D, ``j`` is the gap
    between the two set bits (the bits sit at positions i and i+j); for E and
    F, ``i < j < k`` are the absolute positions of the three set bits.
    """

    kind: CategoryKind
    i: int | None = None
    j: int | None = None
    k: int | None = None

    def __str__(self) -> str:
        parts = [f"{name}={v}" for name, v in (("i", self.i), ("j", self.j), ("k", self.k)) if v is not None]
        return f"{self.kind.value}" + (f" ({', '.join(parts)})" if parts else "")


def classify(multiplier: Word) -> Category:
    """Classify a multiplier per the sparse-encoding rule.

    Zero set bits -> Zero; more than three -> Split.  With 1..3 set bits the
    category is decided by the count and by whether the lowest set bit sits at
    position 1 (A/C/E) or higher (B/D/F).
    """
    ones = multiplier.one_positions()
    n = len(ones)
    if n == 0:
        return Category(CategoryKind.ZERO)
    if n > 3:
        return Category(CategoryKind.SPLIT)
    if n == 1:
        p = ones[0]
        if p == 1:
            return Category(CategoryKind.A, i=1)
        return Category(CategoryKind.B, i=p)
    if n == 2:
        lo, hi = ones
        if lo == 1:
            return Category(CategoryKind.C, i=hi)
        return Category(CategoryKind.D, i=lo, j=hi - lo)
    lo, mid, hi = ones
    kind = CategoryKind.E if lo == 1 else CategoryKind.F
    return Category(kind, i=lo, j=mid, k=hi)


# -- shift/add plans -------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ShiftLeft:
    amount: int

    def render(self) -> str:
        return f"SHL {self.amount}"


@dataclass(frozen=True, slots=True)
class AddM:
    def render(self) -> str:
        return "ADD M"


Step = Union[ShiftLeft, AddM]


@dataclass(frozen=True, slots=True)
class HybridPlan:
    """Executable shift/add chain for one sparse multiplier.

    ``pp_count`` is 1 for categories A-F (the single partial product the
    chain reuses) and 0 for Zero.  Zero-amount shifts are dropped from the
    step list; they would be wiring no-ops.
    """

    category: Category
    steps: tuple[Step, ...]
    add_count: int
    pp_count: int

    @property
    def shift_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, ShiftLeft))

    def render_steps(self) -> list[str]:
        return [s.render() for s in self.steps]


def hybrid_plan(multiplier: Word) -> HybridPlan:
    """Compile a popcount<=3 multiplier into its shift/add chain.

    With set-bit positions p1 < p2 < p3 the chain is
    ``((M << (p3-p2)) + M) << (p2-p1) + M) << (p1-1)`` truncated to however
    many bits exist; this is the category table expressed over absolute
    positions.  The published rule for category F names a final shift of i,
    but only i-1 reproduces M*multiplier (the two-bit and i=1 rows all use
    i-1); the plan uses i-1 and the oracle tests enforce it.

    Raises ValueError for Split multipliers.
    """
    category = classify(multiplier)
    if category.kind is CategoryKind.SPLIT:
        raise ValueError(f"multiplier {multiplier} has more than 3 set bits; split it first")

    positions = multiplier.one_positions()
    steps: list[Step] = []
    for idx in range(len(positions) - 1, 0, -1):
        steps.append(ShiftLeft(positions[idx] - positions[idx - 1]))
        steps.append(AddM())
    if positions and positions[0] > 1:
        steps.append(ShiftLeft(positions[0] - 1))

    return HybridPlan(
        category=category,
        steps=tuple(steps),
        add_count=sum(1 for s in steps if isinstance(s, AddM)),
        pp_count=1 if positions else 0,
    )


def execute_plan(plan: HybridPlan, multiplicand: Word) -> Word:
    """Run a plan: AddM always adds the original multiplicand."""
    if plan.pp_count == 0:
        return Word(0, multiplicand.width)
    acc = multiplicand
    for step in plan.steps:
        if isinstance(step, ShiftLeft):
            acc = acc.shift_left(step.amount)
        else:
            acc = acc + multiplicand
    return acc


def split(multiplier: Word) -> tuple[Word, Word]:
    """Split an even-width word into (high, low) halves of width/2 each."""
    if multiplier.width % 2:
        raise ValueError(f"cannot split odd width {multiplier.width}")
    half = multiplier.width // 2
    lo = Word(multiplier.bits & ((1 << half) - 1), half)
    hi = Word(multiplier.bits >> half, half)
    return hi, lo


# -- radix-4 Booth recoding -------------------------------------------------


@dataclass(frozen=True, slots=True)
class BoothDigits:
    """Radix-4 signed digits, LSB-first, each in {-2, -1, 0, +1, +2}.

    ``coded_width`` is the width the recoder actually scanned: the operand
    width, zero-extended to the next even count, plus one extra zero-extension
    bit when the operand's top bit is set (otherwise the two's-complement
    reading would go negative).  Digit count is coded_width / 2.
    """

    digits: tuple[int, ...]
    operand_width: int
    coded_width: int

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        return sum(d * 4**k for k, d in enumerate(self.digits))

    def __str__(self) -> str:
        return " ".join(f"{d:+d}" if d else "0" for d in reversed(self.digits))


def booth_recode(operand: Word) -> BoothDigits:
    """Recode an unsigned operand into radix-4 signed digits.

    Overlapping 3-bit windows (b[2k+1], b[2k], b[2k-1]) with b[-1] = 0 map to
    digits d = b[2k-1] + b[2k] - 2*b[2k+1].
    """
    coded_width = operand.width + 1 if operand.msb_set else operand.width
    if coded_width % 2:
        coded_width += 1

    bits = operand.bits

    def bit(i: int) -> int:
        return (bits >> i) & 1 if 0 <= i < operand.width else 0

    digits = tuple(
        bit(2 * k - 1) + bit(2 * k) - 2 * bit(2 * k + 1) for k in range(coded_width // 2)
    )
    return BoothDigits(digits, operand.width, coded_width)


# -- partial-product matrices ------------------------------------------------


@dataclass(frozen=True, slots=True)
class PPRow:
    """One partial-product row: ``(+/-) bits << weight``."""

    bits: Word
    weight: int
    negate: bool = False

    @property
    def is_zero(self) -> bool:
        return self.bits.bits == 0

    def value(self) -> int:
        v = self.bits.bits << self.weight
        return -v if self.negate else v


@dataclass(frozen=True, slots=True)
class PPMatrix:
    rows: tuple[PPRow, ...]

    def signed_sum(self) -> int:
        return sum(row.value() for row in self.rows)

    def nonzero_count(self) -> int:
        return sum(1 for row in self.rows if not row.is_zero)

    def __len__(self) -> int:
        return len(self.rows)


def conventional_pp(multiplicand: Word, multiplier: Word) -> PPMatrix:
    """Shift-and-add rows: row k is multiplicand gated by multiplier bit k."""
    zero = Word(0, multiplicand.width)
    rows = tuple(
        PPRow(multiplicand if (multiplier.bits >> k) & 1 else zero, weight=k)
        for k in range(multiplier.width)
    )
    return PPMatrix(rows)


def booth_pp(multiplicand: Word, digits: BoothDigits) -> PPMatrix:
    """One row per radix-4 digit: |d|*M at weight 2k, negated when d < 0.

    A zero row is never marked negated (-0 is 0), so the is_zero flag alone
    decides whether the row contributes.
    """
    rows = tuple(
        PPRow(
            Word(abs(d) * multiplicand.bits, multiplicand.width + 1),
            weight=2 * k,
            negate=d < 0 and multiplicand.bits != 0,
        )
        for k, d in enumerate(digits.digits)
    )
    return PPMatrix(rows)


def hybrid_pp(multiplicand: Word, multiplier: Word) -> PPMatrix:
    """Array placement for the hybrid core: the encoded product in row 0.

    The shift/add chain produces a single partial product, so the reduction
    array sees one live row and (width - 1) all-zero rows that the freeze
    logic can shut off.  Row 0 carries the chain's result; its width is the
    full product width.
    """
    product, _ = unsigned_product(multiplicand, multiplier, Architecture.HYBRID)
    rows = [PPRow(Word(product, multiplicand.width + multiplier.width), weight=0)]
    zero = Word(0, multiplicand.width)
    rows.extend(PPRow(zero, weight=k) for k in range(1, multiplier.width))
    return PPMatrix(tuple(rows))


# -- top-level dispatch -------------------------------------------------------


@dataclass(frozen=True, slots=True)
class OpCounts:
    pp_count: int
    add_count: int
    shift_count: int

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(
            self.pp_count + other.pp_count,
            self.add_count + other.add_count,
            self.shift_count + other.shift_count,
        )


@dataclass(frozen=True, slots=True)
class MultiplyResult:
    product: int
    counts: OpCounts


def _hybrid_leaf(multiplicand: Word, multiplier: Word) -> tuple[int, OpCounts]:
    plan = hybrid_plan(multiplier)
    product = execute_plan(plan, multiplicand).bits
    return product, OpCounts(plan.pp_count, plan.add_count, plan.shift_count)


def _booth_core(multiplicand: Word, multiplier: Word) -> tuple[int, OpCounts]:
    digits = booth_recode(multiplier)
    matrix = booth_pp(multiplicand, digits)
    return matrix.signed_sum(), OpCounts(len(digits), len(digits) - 1, 0)


def unsigned_product(
    multiplicand: Word, multiplier: Word, arch: Architecture
) -> tuple[int, OpCounts]:
    """Multiply two magnitudes with the chosen architecture.

    The hybrid path dispatches on the multiplier's popcount: at most three
    set bits run the shift/add plan directly; otherwise the multiplier is
    split once into halves, each half re-dispatched (dense halves fall back
    to Booth), and the two half-products recombine with one extra addition.
    Odd-width multipliers that cannot split evenly fall back to Booth whole.
    """
    if arch is Architecture.CONVENTIONAL:
        matrix = conventional_pp(multiplicand, multiplier)
        return matrix.signed_sum(), OpCounts(len(matrix), multiplier.width - 1, 0)

    if arch is Architecture.BOOTH:
        return _booth_core(multiplicand, multiplier)

    if multiplier.popcount() <= 3:
        return _hybrid_leaf(multiplicand, multiplier)
    if multiplier.width % 2:
        return _booth_core(multiplicand, multiplier)

    hi, lo = split(multiplier)
    parts = []
    for half in (hi, lo):
        if half.popcount() > 3:
            parts.append(_booth_core(multiplicand, half))
        else:
            parts.append(_hybrid_leaf(multiplicand, half))
    (hi_prod, hi_counts), (lo_prod, lo_counts) = parts
    product = (hi_prod << (multiplier.width // 2)) + lo_prod
    counts = hi_counts + lo_counts + OpCounts(0, 1, 0)
    return product, counts


def _as_sign_magnitude(operand: int | SignMag, width: int | None) -> SignMag:
    if isinstance(operand, SignMag):
        return operand
    if width is None:
        raise ValueError("width is required when operands are plain integers")
    return to_sign_magnitude(operand, width)


def multiply(
    a: int | SignMag,
    b: int | SignMag,
    arch: Architecture,
    width: int | None = None,
    prefer_sparse: bool = False,
) -> MultiplyResult:
    """Multiply a * b (b is the multiplier) and report operation counts.

    Signs are handled outside the unsigned core: the encoders see magnitudes
    and the result carries sign(a) * sign(b).  ``prefer_sparse`` swaps the
    operands when the multiplicand has fewer set bits than the multiplier,
    which can land a denser pair in a cheaper category.
    """
    sa = _as_sign_magnitude(a, width)
    sb = _as_sign_magnitude(b, width)
    check_operand_width(sa.magnitude.width)
    check_operand_width(sb.magnitude.width)

    multiplicand, multiplier = sa.magnitude, sb.magnitude
    if prefer_sparse and multiplicand.popcount() < multiplier.popcount():
        multiplicand, multiplier = multiplier, multiplicand

    magnitude, counts = unsigned_product(multiplicand, multiplier, arch)
    sign = sa.sign * sb.sign
    return MultiplyResult(product=sign * magnitude, counts=counts)
