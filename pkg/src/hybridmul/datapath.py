"""Cell-level array multiplier model with freeze gating and toggle accounting.

The array is the classic unsigned reduction structure: partial-product rows
feed a stack of carry-save adder rows (one 3:2 compressor row per extra PP
row) and a final ripple carry-propagate adder resolves the sum/carry pair.
The whole array works modulo 2**(2*width), so two's-complement patterns for
negated rows (Booth) sum to the exact product.

Negated rows use the standard sign-extension-prevention construction: the
row's field enters inverted with the +1 folded in at the row's weight, and
the -2**(field_top) terms of all negated rows collapse into one shared
correction row at the bottom of the array.  This keeps each row's live bits
inside its own field instead of smearing sign bits across every column.

Switching activity is the Hamming distance between consecutive values of a
fixed node vector: every PP row bit, every carry-save cell's a/b/cin/sum/cout,
and every final-adder cell's a/b/cin/sum/cout.  Control wiring (freeze lines,
mux selects, the detector itself) is not counted.

Freezing: an all-zero PP row's adder row can be shut off, the incoming
sum/carry busses bypass it unchanged; final-adder columns whose two summand
bits are both zero can likewise be skipped with the incoming ripple carry
forwarded to the product bit.  Frozen cells hold their previous node values,
so they contribute zero toggles; the arithmetic is untouched because a
bypassed row/column would not have changed the running total anyway.

Evaluation is zero-delay combinational: one value per node per evaluation,
no glitch modeling.  Per column the cells are evaluated bit-parallel on
Python integers, one integer per node class per row.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitnum import Word, check_operand_width, to_sign_magnitude
from .encoding import (
    Architecture,
    PPMatrix,
    booth_pp,
    booth_recode,
    conventional_pp,
    hybrid_pp,
)


class GeometryError(ValueError):
    """Partial-product matrix does not fit the array it was offered to."""


class ProductMismatchError(RuntimeError):
    """A simulated product disagreed with the native-multiply oracle."""

    def __init__(self, a: int, b: int, got: int, expected: int):
        super().__init__(f"product mismatch for {a} * {b}: got {got}, expected {expected}")
        self.pair = (a, b)
        self.got = got
        self.expected = expected


def full_adder(a: int, b: int, cin: int) -> tuple[int, int]:
    """One-bit full adder: carry is the majority, sum the odd parity.

    Written in the two canonical sum-of-products forms so the truth table is
    explicit: cout = ab + b*cin + cin*a and
    sum = a'b'c + a'bc' + ab'c' + abc.
    """
    na, nb, nc = a ^ 1, b ^ 1, cin ^ 1
    cout = (a & b) | (b & cin) | (cin & a)
    s = (na & nb & cin) | (na & b & nc) | (a & nb & nc) | (a & b & cin)
    return s, cout


@dataclass(slots=True)
class FACell:
    """Stateful full-adder cell; when frozen it latches its last values."""

    a: int = 0
    b: int = 0
    cin: int = 0
    sum: int = 0
    cout: int = 0
    frozen: bool = False

    def step(self, a: int, b: int, cin: int) -> tuple[int, int]:
        if self.frozen:
            return self.sum, self.cout
        self.a, self.b, self.cin = a, b, cin
        self.sum, self.cout = full_adder(a, b, cin)
        return self.sum, self.cout


@dataclass(frozen=True, slots=True)
class ArrayGeometry:
    """Fixed array shape for one (width, architecture) pair."""

    width: int
    arch: Architecture
    rows: int
    cols: int

    @classmethod
    def create(cls, width: int, arch: Architecture) -> "ArrayGeometry":
        check_operand_width(width)
        if arch is Architecture.BOOTH:
            # worst case digit count (top-bit-set operand needs one extra
            # digit) plus the shared sign-correction row
            rows = width // 2 + 2
        else:
            rows = width
        return cls(width=width, arch=arch, rows=rows, cols=2 * width)

    @property
    def node_count(self) -> int:
        # PP row bits + 5 nodes per carry-save cell + 5 per final-adder cell.
        return self.rows * self.cols + (self.rows - 1) * 5 * self.cols + 5 * self.cols


@dataclass(frozen=True, slots=True)
class FreezeMask:
    """Row-bypass flags plus a column bitmask for the final adder."""

    row_frozen: tuple[bool, ...]
    col_frozen: int

    @classmethod
    def disabled(cls, geometry: ArrayGeometry) -> "FreezeMask":
        return cls(row_frozen=(False,) * geometry.rows, col_frozen=0)

    @property
    def frozen_row_count(self) -> int:
        return sum(self.row_frozen)

    @property
    def frozen_col_count(self) -> int:
        return self.col_frozen.bit_count()


def _fold_rows(pp: PPMatrix, geometry: ArrayGeometry) -> list[int]:
    """Row contributions as 2**cols-modular integers, padded to the row count.

    For a Booth array the last row is reserved for the shared sign
    correction: each negated row enters as (~field + 1) << weight and owes
    -2**(field_width + weight), and those debts sum (mod 2**cols) into the
    correction row.  Other architectures never produce negated rows.
    """
    data_rows = geometry.rows - 1 if geometry.arch is Architecture.BOOTH else geometry.rows
    if len(pp) > data_rows:
        raise GeometryError(f"{len(pp)} PP rows offered to a {data_rows}-row array")
    span = 1 << geometry.cols
    contributions = []
    correction = 0
    for row in pp.rows:
        raw = row.bits.bits << row.weight
        if raw >= span:
            raise GeometryError(
                f"row value {row.bits.bits} at weight {row.weight} "
                f"exceeds {geometry.cols} columns"
            )
        if row.negate and row.bits.bits:
            if geometry.arch is not Architecture.BOOTH:
                raise GeometryError("negated rows require a booth array")
            field_width = row.bits.width
            inverted = (~row.bits.bits) & ((1 << field_width) - 1)
            contributions.append((inverted + 1) << row.weight)
            correction = (correction - (1 << (field_width + row.weight))) % span
        else:
            contributions.append(raw)
    contributions.extend([0] * (data_rows - len(pp)))
    if geometry.arch is Architecture.BOOTH:
        contributions.append(correction)
    return contributions


def detect_freeze(pp: PPMatrix, geometry: ArrayGeometry) -> FreezeMask:
    """Build the freeze mask the detection logic would assert for this input.

    A row freezes iff its bits are all zero.  Final-adder columns freeze iff
    both summand bits arriving there are zero, which requires replaying the
    carry-save reduction (with the frozen rows bypassed) at value level.
    """
    contributions = _fold_rows(pp, geometry)
    row_frozen = tuple(c == 0 for c in contributions)

    mask = (1 << geometry.cols) - 1
    s, c = contributions[0], 0
    for r in range(1, geometry.rows):
        if row_frozen[r]:
            continue
        b = contributions[r]
        carry = (s & b) | (b & c) | (c & s)
        s = s ^ b ^ c
        c = (carry << 1) & mask
    return FreezeMask(row_frozen=row_frozen, col_frozen=~(s | c) & mask)


@dataclass(slots=True)
class ToggleDelta:
    """Node transitions caused by one evaluation."""

    total: int
    row_bit_toggles: tuple[int, ...]
    csa_toggles: tuple[int, ...]  # index r = cells of the adder row fed by PP row r; [0] is 0
    cpa_toggles: int
    frozen_cell_evaluations: int


@dataclass(slots=True)
class ToggleReport:
    """Accumulated switching activity for one simulated input stream."""

    width: int
    arch: Architecture
    ssst_enabled: bool
    total_toggles: int = 0
    per_row_toggles: list[int] = field(default_factory=list)  # rows 0..R-1, then final adder
    frozen_cell_evaluations: int = 0
    operations_simulated: int = 0

    def accumulate(self, delta: ToggleDelta) -> None:
        if not self.per_row_toggles:
            self.per_row_toggles = [0] * (len(delta.row_bit_toggles) + 1)
        for r, (bits, cells) in enumerate(zip(delta.row_bit_toggles, delta.csa_toggles)):
            self.per_row_toggles[r] += bits + cells
        self.per_row_toggles[-1] += delta.cpa_toggles
        self.total_toggles += delta.total
        self.frozen_cell_evaluations += delta.frozen_cell_evaluations
        self.operations_simulated += 1


class _CellRow:
    """Bit-parallel node storage for one row of full-adder cells."""

    __slots__ = ("a", "b", "cin", "sum", "cout")

    def __init__(self) -> None:
        self.a = self.b = self.cin = self.sum = self.cout = 0

    def toggles_against(self, a: int, b: int, cin: int, s: int, cout: int) -> int:
        return (
            (self.a ^ a).bit_count()
            + (self.b ^ b).bit_count()
            + (self.cin ^ cin).bit_count()
            + (self.sum ^ s).bit_count()
            + (self.cout ^ cout).bit_count()
        )

    def store(self, a: int, b: int, cin: int, s: int, cout: int) -> None:
        self.a, self.b, self.cin, self.sum, self.cout = a, b, cin, s, cout

    def splice(self, keep_mask: int, a: int, b: int, cin: int, s: int, cout: int) -> tuple[int, int, int, int, int]:
        """New node values with ``keep_mask`` columns latched at old values."""
        live = ~keep_mask
        return (
            (a & live) | (self.a & keep_mask),
            (b & live) | (self.b & keep_mask),
            (cin & live) | (self.cin & keep_mask),
            (s & live) | (self.sum & keep_mask),
            (cout & live) | (self.cout & keep_mask),
        )


class ArrayState:
    """Node values of one array instance across a stream of evaluations.

    Single-owner and order-dependent: one stream drives one state.  The
    initial state is all zeros, matching a reset.
    """

    def __init__(self, width: int, arch: Architecture):
        self.geometry = ArrayGeometry.create(width, arch)
        g = self.geometry
        self._row_bits = [0] * g.rows
        self._csa = [_CellRow() for _ in range(g.rows - 1)]
        self._cpa = _CellRow()

    def evaluate(self, pp: PPMatrix, mask: FreezeMask | None = None) -> tuple[int, ToggleDelta]:
        """Evaluate the array on one PP matrix; returns (product, delta).

        With ``mask`` from :func:`detect_freeze` the product is exact and
        frozen cells keep their node values.  ``None`` means no freezing.
        """
        g = self.geometry
        if mask is None:
            mask = FreezeMask.disabled(g)
        if len(mask.row_frozen) != g.rows:
            raise GeometryError("freeze mask row count does not match array geometry")
        contributions = _fold_rows(pp, g)
        span_mask = (1 << g.cols) - 1

        frozen_cells = 0
        row_bit_toggles = []
        for r, contrib in enumerate(contributions):
            row_bit_toggles.append((self._row_bits[r] ^ contrib).bit_count())
            self._row_bits[r] = contrib

        # Carry-save reduction: one 3:2 row per PP row after the first.
        csa_toggles = [0]
        s_bus, c_bus = contributions[0], 0
        for r in range(1, g.rows):
            cells = self._csa[r - 1]
            if mask.row_frozen[r]:
                # Bypass: busses pass unchanged, cells hold their values.
                csa_toggles.append(0)
                frozen_cells += g.cols
                continue
            a, b, cin = s_bus, contributions[r], c_bus
            s = a ^ b ^ cin
            carry = (a & b) | (b & cin) | (cin & a)
            csa_toggles.append(cells.toggles_against(a, b, cin, s, carry))
            cells.store(a, b, cin, s, carry)
            s_bus, c_bus = s, (carry << 1) & span_mask

        # Final carry-propagate adder over the surviving sum/carry pair.
        a, b = s_bus, c_bus
        total = a + b
        sum_vec = total & span_mask
        cin_vec = (a ^ b ^ total) & span_mask
        cout_vec = (cin_vec >> 1) | (((total >> g.cols) & 1) << (g.cols - 1))
        product = sum_vec

        keep = mask.col_frozen
        nodes = self._cpa.splice(keep, a, b, cin_vec, sum_vec, cout_vec)
        cpa_toggles = self._cpa.toggles_against(*nodes)
        self._cpa.store(*nodes)
        frozen_cells += keep.bit_count()

        delta = ToggleDelta(
            total=sum(row_bit_toggles) + sum(csa_toggles) + cpa_toggles,
            row_bit_toggles=tuple(row_bit_toggles),
            csa_toggles=tuple(csa_toggles),
            cpa_toggles=cpa_toggles,
            frozen_cell_evaluations=frozen_cells,
        )
        return product, delta

    def snapshot(self) -> tuple[int, ...]:
        """Current node vectors, for tests and debugging."""
        vals: list[int] = list(self._row_bits)
        for cells in self._csa:
            vals += [cells.a, cells.b, cells.cin, cells.sum, cells.cout]
        vals += [self._cpa.a, self._cpa.b, self._cpa.cin, self._cpa.sum, self._cpa.cout]
        return tuple(vals)


def build_pp(multiplicand: Word, multiplier: Word, arch: Architecture) -> PPMatrix:
    """Architecture-specific PP placement for the array."""
    if arch is Architecture.CONVENTIONAL:
        return conventional_pp(multiplicand, multiplier)
    if arch is Architecture.BOOTH:
        return booth_pp(multiplicand, booth_recode(multiplier))
    return hybrid_pp(multiplicand, multiplier)


def simulate_stream(
    pairs,
    arch: Architecture,
    width: int,
    ssst_enabled: bool,
    trace=None,
) -> ToggleReport:
    """Drive one array through a stream of signed operand pairs.

    Builds the architecture's PP per pair, applies the freeze detector when
    ``ssst_enabled``, and accumulates node toggles from an all-zero reset
    state.  Every product is checked against the native-multiply oracle;
    a mismatch raises :class:`ProductMismatchError`.  ``trace``, if given,
    is called as ``trace(index, delta)`` after each evaluation.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("input stream must not be empty")
    state = ArrayState(width, arch)
    geometry = state.geometry
    report = ToggleReport(width=width, arch=arch, ssst_enabled=ssst_enabled)
    for index, (a, b) in enumerate(pairs):
        ma = to_sign_magnitude(a, width).magnitude
        mb = to_sign_magnitude(b, width).magnitude
        pp = build_pp(ma, mb, arch)
        mask = detect_freeze(pp, geometry) if ssst_enabled else None
        product, delta = state.evaluate(pp, mask)
        if product != abs(a * b):
            raise ProductMismatchError(a, b, product, abs(a * b))
        report.accumulate(delta)
        if trace is not None:
            trace(index, delta)
    return report
