"""Gate-sequence IR for Z_d digit registers.

List order is application order: ``gates[0]`` acts on the state first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class NetlistError(ValueError):
    """Malformed netlist text or an invalid gate."""


FOURIER = "F"
FOURIER_INV = "FINV"
CSHIFT = "CSHIFT"
CPHASE = "CPHASE"

_ARITY = {FOURIER: 1, FOURIER_INV: 1, CSHIFT: 2, CPHASE: 2}


@dataclass(frozen=True)
class Gate:
    kind: str
    i: int
    j: int | None = None
    power: int = 1

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.i,) if self.j is None else (self.i, self.j)

    def __str__(self):
        if self.j is None:
            return f"{self.kind} {self.i}"
        return f"{self.kind} {self.i} {self.j} {self.power}"


def Fourier(i: int) -> Gate:
    return Gate(FOURIER, int(i))


def FourierInv(i: int) -> Gate:
    return Gate(FOURIER_INV, int(i))


def CShift(control: int, target: int, power: int = 1) -> Gate:
    if control == target:
        raise NetlistError(f"control equals target ({control})")
    return Gate(CSHIFT, int(control), int(target), int(power))


def CPhase(i: int, j: int, power: int = 1) -> Gate:
    """Symmetric in i, j; stored with i < j."""
    if i == j:
        raise NetlistError(f"controlled phase on a single wire ({i})")
    i, j = sorted((int(i), int(j)))
    return Gate(CPHASE, i, j, int(power))


@dataclass(frozen=True)
class Circuit:
    """A gate list on ``size`` wires over Z_d.

    ``wires`` optionally labels each wire with the graph vertex it carries.
    """

    d: int
    size: int
    gates: tuple[Gate, ...] = ()
    wires: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.wires is not None:
            object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
            if len(self.wires) != self.size:
                raise NetlistError("wire labels must match the register size")
        if self.d < 2:
            raise NetlistError(f"d must be >= 2, got {self.d}")
        for g in self.gates:
            _validate_gate(g, self.d, self.size)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.d, self.size, tuple(gates), self.wires)


def _validate_gate(g: Gate, d: int, size: int) -> None:
    if g.kind not in _ARITY:
        raise NetlistError(f"unknown gate kind {g.kind!r}")
    for w in g.wires:
        if not 0 <= w < size:
            raise NetlistError(f"wire {w} out of range for register of size {size}")
    if _ARITY[g.kind] == 2:
        if g.j is None or g.i == g.j:
            raise NetlistError(f"two-digit gate needs distinct wires: {g}")
        if not 1 <= g.power < d:
            raise NetlistError(f"power {g.power} outside [1, {d})")


def gate_count(circuit: Circuit) -> dict[str, int]:
    counts = {"fourier": 0, "fourier_inv": 0, "cshift": 0, "cphase": 0}
    key = {FOURIER: "fourier", FOURIER_INV: "fourier_inv",
           CSHIFT: "cshift", CPHASE: "cphase"}
    for g in circuit.gates:
        counts[key[g.kind]] += 1
    counts["total"] = len(circuit.gates)
    return counts


def inverse_gate(g: Gate, d: int) -> Gate:
    if g.kind == FOURIER:
        return FourierInv(g.i)
    if g.kind == FOURIER_INV:
        return Fourier(g.i)
    return Gate(g.kind, g.i, g.j, (d - g.power) % d)


def invert(circuit: Circuit) -> Circuit:
    return circuit.with_gates(inverse_gate(g, circuit.d) for g in reversed(circuit.gates))


def lower_phases(circuit: Circuit) -> Circuit:
    """Rewrite each CPhase(i, j, n) as FINV j, CSHIFT i j n, F j.

    A Fourier gate followed on the same wire (with nothing else touching that
    wire in between) by the FINV opening a rewrite is cancelled.
    """
    out: list[Gate | None] = []
    last_on_wire: dict[int, list[int]] = {}

    def push(g: Gate) -> None:
        out.append(g)
        for w in g.wires:
            last_on_wire.setdefault(w, []).append(len(out) - 1)

    for g in circuit.gates:
        if g.kind != CPHASE:
            push(g)
            continue
        stack = last_on_wire.get(g.j, [])
        if stack and out[stack[-1]] == Fourier(g.j):
            out[stack.pop()] = None
        else:
            push(FourierInv(g.j))
        push(CShift(g.i, g.j, g.power))
        push(Fourier(g.j))
    return circuit.with_gates(g for g in out if g is not None)


def relabel_wires(circuit: Circuit, mapping: Sequence[int], size: int | None = None) -> Circuit:
    """Move gate on wire w to wire mapping[w]."""
    def move(g: Gate) -> Gate:
        if g.j is None:
            return Gate(g.kind, mapping[g.i])
        if g.kind == CPHASE:
            return CPhase(mapping[g.i], mapping[g.j], g.power)
        return Gate(g.kind, mapping[g.i], mapping[g.j], g.power)

    return Circuit(circuit.d, circuit.size if size is None else size,
                   tuple(move(g) for g in circuit.gates))


# -- netlist text ------------------------------------------------------------

_HEADER = re.compile(r"^QDNET d=(\d+) q=(\d+)$")
_WIRES = re.compile(r"^# wires:((?: \d+)*)$")


def emit_netlist(circuit: Circuit) -> str:
    lines = [f"QDNET d={circuit.d} q={circuit.size}"]
    if circuit.wires is not None:
        lines.append("# wires:" + "".join(f" {w}" for w in circuit.wires))
    lines.extend(str(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def parse_gate(line: str) -> Gate:
    parts = line.split()
    if not parts:
        raise NetlistError("empty gate line")
    op, args = parts[0], parts[1:]
    if op not in _ARITY:
        raise NetlistError(f"unknown opcode {op!r}")
    want = 1 if _ARITY[op] == 1 else 3
    if len(args) != want:
        raise NetlistError(f"{op} expects {want} arguments, got {len(args)}")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise NetlistError(f"non-integer argument in {line!r}") from None
    if any(x < 0 for x in nums):
        raise NetlistError(f"negative argument in {line!r}")
    if op == FOURIER:
        return Fourier(nums[0])
    if op == FOURIER_INV:
        return FourierInv(nums[0])
    if op == CSHIFT:
        return CShift(*nums)
    if nums[0] == nums[1]:
        raise NetlistError(f"controlled phase on a single wire ({nums[0]})")
    # keep the written wire order so emit(parse(x)) == x for canonical text
    return Gate(CPHASE, nums[0], nums[1], nums[2]) if nums[0] < nums[1] else CPhase(*nums)


def parse_netlist(text: str) -> Circuit:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise NetlistError("missing QDNET header")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise NetlistError(f"bad header line {lines[0]!r}")
    d, size = int(m.group(1)), int(m.group(2))
    wires = None
    gates = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            wm = _WIRES.match(line)
            if wm:
                wires = tuple(int(w) for w in wm.group(1).split())
            continue
        try:
            gates.append(parse_gate(line))
        except NetlistError as exc:
            raise NetlistError(f"line {lineno}: {exc}") from None
    return Circuit(d, size, tuple(gates), wires)
