"""Barcodes via conversion to a non-zigzag filtration of Delta-complex cells.

A zigzag filtration is rewritten as a cell-wise ascending filtration: one
cone vertex, one copy cell per addition (in order), one cone cell per
deletion (in reverse order).  Standard column reduction of the resulting
boundary matrix gives a creator/destroyer pairing which maps bijectively
back to the zigzag barcode.  This pipeline is both the from-scratch oracle
used throughout the test suite and, with transposition repairs on the
reduced matrix, an incremental engine for six of the eight operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .chains import Simplex
from .errors import (ContractViolation, IllegalContraction, IllegalExpansion,
                     IllegalSwitch, IllegalTransposition, UnsupportedOnFzzPath)
from .filtration import ADD, DELETE, Step, ZigzagFiltration, renumber_after_edit
from .results import CREATED, DESTROYED, OpResult

OMEGA = "omega"
COPY = "copy"
CONE = "cone"


@dataclass
class DeltaCell:
    id: int
    dimension: int
    boundary: list[int]  # cell ids, duplicates allowed in principle
    tag: str
    simplex: Optional[Simplex] = None  # for COPY: the simplex this copies
    occurrence: int = 0  # which addition of that simplex
    base: Optional[int] = None  # for CONE: id of the coned cell


@dataclass
class DeltaFiltration:
    """Cells in addition order plus the index bijection to the zigzag side."""
    cells: list[DeltaCell]
    phi: list[int]  # zigzag step index -> matrix position (1..m)
    phi_inv: list[Optional[int]]  # matrix position -> zigzag step index (None at 0)


def convert(filtration: ZigzagFiltration, validate: bool = True) -> DeltaFiltration:
    """Rewrite a valid zigzag filtration as the ascending cell filtration."""
    if validate:
        bad = filtration.validate()
        if bad:
            raise ContractViolation("invalid filtration: " + "; ".join(bad))
    next_id = 0

    def fresh() -> int:
        nonlocal next_id
        next_id += 1
        return next_id - 1

    omega = DeltaCell(fresh(), 0, [], OMEGA)
    cells = [omega]
    current: dict[Simplex, DeltaCell] = {}
    occurrences: dict[Simplex, int] = {}
    deletions: list[DeltaCell] = []
    for step in filtration.steps:
        s = step.simplex
        if step.is_add:
            occ = occurrences.get(s, 0)
            occurrences[s] = occ + 1
            cell = DeltaCell(fresh(), s.dimension,
                             [current[f].id for f in s.faces()],
                             COPY, simplex=s, occurrence=occ)
            current[s] = cell
            cells.append(cell)
        else:
            deletions.append(current.pop(s))
    cone_of: dict[int, int] = {}
    for base in reversed(deletions):
        if base.dimension == 0:
            bd = [base.id, omega.id]
        else:
            bd = [base.id] + [cone_of[f] for f in base.boundary]
        cone = DeltaCell(fresh(), base.dimension + 1, bd, CONE, base=base.id,
                         simplex=base.simplex)
        cone_of[base.id] = cone.id
        cells.append(cone)

    m = len(filtration.steps)
    phi: list[int] = [0] * m
    adds = 0
    dels = 0
    for j, step in enumerate(filtration.steps):
        if step.is_add:
            phi[j] = 1 + adds
            adds += 1
        else:
            phi[j] = m - dels
            dels += 1
    phi_inv: list[Optional[int]] = [None] * (m + 1)
    for j, pos in enumerate(phi):
        phi_inv[pos] = j
    return DeltaFiltration(cells, phi, phi_inv)


class ReducedMatrix:
    """R = D*V column reduction over Z2 with transposition repairs.

    Columns are int bitmasks; row r is the cell at position r.  V is upper
    triangular with unit diagonal, R has pairwise distinct lowest ones.
    """

    def __init__(self, boundary_columns: list[int]):
        self.D = list(boundary_columns)
        n = len(self.D)
        self.R = list(self.D)
        self.V = [1 << j for j in range(n)]
        self.low_inv: dict[int, int] = {}
        for j in range(n):
            self._reduce_column(j)

    def __len__(self) -> int:
        return len(self.D)

    @staticmethod
    def _low(col: int) -> int:
        return col.bit_length() - 1  # -1 for the zero column

    def low(self, j: int) -> int:
        return self._low(self.R[j])

    def _reduce_column(self, j: int) -> None:
        while self.R[j]:
            r = self._low(self.R[j])
            k = self.low_inv.get(r)
            if k is None:
                self.low_inv[r] = j
                return
            self.R[j] ^= self.R[k]
            self.V[j] ^= self.V[k]

    def pairs(self) -> list[tuple[int, int]]:
        """(creator position, destroyer position) pairs."""
        return sorted((self._low(c), j) for j, c in enumerate(self.R) if c)

    def unpaired(self) -> list[int]:
        destroyed = {self._low(c) for c in self.R if c}
        return [j for j, c in enumerate(self.R) if not c and j not in destroyed]

    def _swap_rows(self, i: int, j: int) -> None:
        mask = (1 << i) | (1 << j)
        for mat in (self.D, self.R, self.V):
            for k, col in enumerate(mat):
                bi = (col >> i) & 1
                bj = (col >> j) & 1
                if bi != bj:
                    mat[k] = col ^ mask

    def transpose(self, k: int) -> None:
        """Swap positions k and k+1, repairing the reduction in place."""
        i, j = k, k + 1
        if (self.D[j] >> i) & 1:
            raise IllegalTransposition(f"cell {i} is a boundary face of cell {j}")
        if (self.V[j] >> i) & 1:
            self.V[j] ^= self.V[i]
            self.R[j] ^= self.R[i]
        # columns whose lowest one sits in a swapped row may need repair
        touched = {i, j}
        for row in (i, j):
            c = self.low_inv.get(row)
            if c is not None:
                touched.add(c)
        for mat in (self.D, self.R, self.V):
            mat[i], mat[j] = mat[j], mat[i]
        self._swap_rows(i, j)
        for c in sorted(touched):
            self.low_inv = {r: col for r, col in self.low_inv.items() if col != c}
        self._repair(sorted(touched))

    def _repair(self, columns: list[int]) -> None:
        for c in columns:
            while self.R[c]:
                r = self._low(self.R[c])
                k = self.low_inv.get(r)
                if k is None:
                    self.low_inv[r] = c
                    break
                if k > c:
                    # the earlier column keeps the pivot; keep reducing the later one
                    self.low_inv[r] = c
                    self.R[k] ^= self.R[c]
                    self.V[k] ^= self.V[c]
                    c = k
                    continue
                self.R[c] ^= self.R[k]
                self.V[c] ^= self.V[k]

    def append_column(self, boundary: int) -> None:
        j = len(self.D)
        self.D.append(boundary)
        self.R.append(boundary)
        self.V.append(1 << j)
        self._reduce_column(j)

    def pop_column(self) -> None:
        """Drop the last column; entries at its row cannot exist in earlier ones."""
        j = len(self.D) - 1
        if self.R[j]:
            del self.low_inv[self._low(self.R[j])]
        self.D.pop()
        self.R.pop()
        self.V.pop()


def reduce(delta: DeltaFiltration) -> tuple[ReducedMatrix, list[tuple[int, int]]]:
    """Reduce the cell boundary matrix; return it plus the pairing."""
    pos_of = {cell.id: p for p, cell in enumerate(delta.cells)}
    columns = []
    for cell in delta.cells:
        col = 0
        for face in cell.boundary:
            col ^= 1 << pos_of[face]  # duplicated faces cancel over Z2
        columns.append(col)
    matrix = ReducedMatrix(columns)
    pairs = matrix.pairs()
    if matrix.unpaired() != [0]:
        raise AssertionError("expected the cone vertex to be the only unpaired creator")
    return matrix, pairs


def map_intervals(delta: DeltaFiltration,
                  pairs: list[tuple[int, int]],
                  steps: list[Step]) -> list[tuple[int, int, int]]:
    """Map the cell pairing back to the zigzag barcode as (dim, birth, death)."""
    out = []
    for creator_pos, destroyer_pos in pairs:
        x = delta.phi_inv[creator_pos]
        y = delta.phi_inv[destroyer_pos]
        if x is None or y is None:
            raise AssertionError("the cone vertex cannot appear in a finite pair")
        if x < y:
            birth, death, creator = x + 1, y, x
        else:
            birth, death, creator = y + 1, x, y
        step = steps[creator]
        dim = step.simplex.dimension if step.is_add else step.simplex.dimension - 1
        out.append((dim, birth, death))
    return sorted(out)


def barcode_from_scratch(filtration: ZigzagFiltration,
                         validate: bool = True) -> list[tuple[int, int, int]]:
    """convert -> reduce -> map: the from-scratch oracle."""
    if not filtration.steps:
        return []
    delta = convert(filtration, validate=validate)
    _, pairs = reduce(delta)
    return map_intervals(delta, pairs, filtration.steps)


# ----------------------------------------------------------------------
# incremental engine for the six transposition-compatible operations


class FzzEngine:
    """Maintains the converted filtration and its reduction across edits."""

    def __init__(self, filtration: ZigzagFiltration):
        self.filtration = filtration.copy()
        self._rebuild()

    def _rebuild(self) -> None:
        self.delta = convert(self.filtration)
        self.matrix, _ = reduce(self.delta)

    def _rebuild_phi(self) -> None:
        m = len(self.filtration.steps)
        phi = [0] * m
        adds = 0
        dels = 0
        for j, step in enumerate(self.filtration.steps):
            if step.is_add:
                phi[j] = 1 + adds
                adds += 1
            else:
                phi[j] = m - dels
                dels += 1
        self.delta.phi = phi
        phi_inv: list[Optional[int]] = [None] * (m + 1)
        for j, pos in enumerate(phi):
            phi_inv[pos] = j
        self.delta.phi_inv = phi_inv

    def barcode(self) -> list[tuple[int, int, int]]:
        return map_intervals(self.delta, self.matrix.pairs(), self.filtration.steps)

    def intervals_with_ids(self) -> dict[int, tuple[int, int, int]]:
        """Barcode keyed by the stable id of the creator cell."""
        out = {}
        for dim, birth, death in self.barcode():
            pos = self.delta.phi[birth - 1]
            out[self.delta.cells[pos].id] = (dim, birth, death)
        return out

    def _steps(self) -> list[Step]:
        return self.filtration.steps

    def _vines_identity(self) -> dict[int, object]:
        return {cid: cid for cid in self.intervals_with_ids()}

    def forward_switch(self, i: int) -> OpResult:
        steps = self._steps()
        _check_switch_site(steps, i, ADD, ADD)
        sigma, tau = steps[i - 1].simplex, steps[i].simplex
        if set(sigma) <= set(tau):
            raise IllegalSwitch(f"{sigma.text()} is a face of {tau.text()}")
        pos = self.delta.phi[i - 1]
        if self.delta.phi[i] != pos + 1:
            raise AssertionError("consecutive additions must map to adjacent copies")
        self.matrix.transpose(pos)
        self.delta.cells[pos], self.delta.cells[pos + 1] = \
            self.delta.cells[pos + 1], self.delta.cells[pos]
        steps[i - 1], steps[i] = steps[i], steps[i - 1]
        return OpResult("fs", i, remap={}, vines=self._vines_identity(),
                        stats={"transpositions": 1})

    def backward_switch(self, i: int) -> OpResult:
        steps = self._steps()
        _check_switch_site(steps, i, DELETE, DELETE)
        sigma, tau = steps[i - 1].simplex, steps[i].simplex
        if set(tau) <= set(sigma):
            raise IllegalSwitch(f"{tau.text()} is a face of {sigma.text()}")
        pos = self.delta.phi[i]  # the later deletion's cone sits lower
        if self.delta.phi[i - 1] != pos + 1:
            raise AssertionError("consecutive deletions must map to adjacent cones")
        self.matrix.transpose(pos)
        self.delta.cells[pos], self.delta.cells[pos + 1] = \
            self.delta.cells[pos + 1], self.delta.cells[pos]
        steps[i - 1], steps[i] = steps[i], steps[i - 1]
        return OpResult("bs", i, remap={}, vines=self._vines_identity(),
                        stats={"transpositions": 1})

    def outward_switch(self, i: int) -> OpResult:
        return self._mixed_switch(i, ADD, DELETE, "os")

    def inward_switch(self, i: int) -> OpResult:
        return self._mixed_switch(i, DELETE, ADD, "is")

    def _mixed_switch(self, i: int, first: str, second: str, name: str) -> OpResult:
        steps = self._steps()
        _check_switch_site(steps, i, first, second)
        if steps[i - 1].simplex == steps[i].simplex:
            raise IllegalSwitch("switching an add/delete pair of the same simplex")
        steps[i - 1], steps[i] = steps[i], steps[i - 1]
        self.delta.phi[i - 1], self.delta.phi[i] = self.delta.phi[i], self.delta.phi[i - 1]
        self.delta.phi_inv[self.delta.phi[i - 1]] = i - 1
        self.delta.phi_inv[self.delta.phi[i]] = i
        return OpResult(name, i, remap={}, vines=self._vines_identity(), stats={})

    def inward_expansion(self, i: int, sigma: Simplex) -> OpResult:
        steps = self._steps()
        m = len(steps)
        if not 0 <= i <= m:
            raise ContractViolation(f"position {i} out of range 0..{m}")
        cx = self.filtration.complex_at(i)
        if sigma in cx:
            raise IllegalExpansion(f"{sigma.text()} already present")
        if any(f not in cx for f in sigma.faces()):
            raise IllegalExpansion(f"{sigma.text()} has missing faces")

        current = _current_cells(self.delta, steps, i)
        pos_of = {cell.id: p for p, cell in enumerate(self.delta.cells)}
        copy_cell = DeltaCell(_fresh_cell_id(self.delta), sigma.dimension,
                              [current[f].id for f in sigma.faces()],
                              COPY, simplex=sigma,
                              occurrence=_next_occurrence(steps, i, sigma))
        col = 0
        for face in copy_cell.boundary:
            col ^= 1 << pos_of[face]
        self.delta.cells.append(copy_cell)
        self.matrix.append_column(col)
        copy_pos = len(self.delta.cells) - 1
        if copy_cell.dimension == 0:
            cone_bd = [copy_cell.id, self.delta.cells[0].id]
            cone_col = (1 << copy_pos) | 1
        else:
            cone_of = _cone_index(self.delta)
            cone_bd = [copy_cell.id] + [cone_of[f] for f in copy_cell.boundary]
            cone_col = 1 << copy_pos
            for face in cone_bd[1:]:
                cone_col ^= 1 << pos_of[face]
        cone_cell = DeltaCell(_fresh_cell_id(self.delta), sigma.dimension + 1,
                              cone_bd, CONE, base=copy_cell.id, simplex=sigma)
        self.delta.cells.append(cone_cell)
        self.matrix.append_column(cone_col)

        # move both cells to their proper positions
        adds_before = sum(1 for s in steps[:i] if s.is_add)
        dels_before = sum(1 for s in steps[:i] if not s.is_add)
        copy_target = 1 + adds_before
        cone_target = (m + 2) - dels_before
        transpositions = 0
        for p in range(copy_pos - 1, copy_target - 1, -1):
            self.matrix.transpose(p)
            self.delta.cells[p], self.delta.cells[p + 1] = \
                self.delta.cells[p + 1], self.delta.cells[p]
            transpositions += 1
        cone_pos = len(self.delta.cells) - 1
        for p in range(cone_pos - 1, cone_target - 1, -1):
            self.matrix.transpose(p)
            self.delta.cells[p], self.delta.cells[p + 1] = \
                self.delta.cells[p + 1], self.delta.cells[p]
            transpositions += 1

        steps.insert(i, self.filtration.new_step(ADD, sigma))
        steps.insert(i + 1, self.filtration.new_step(DELETE, sigma))
        self._rebuild_phi()
        remap = renumber_after_edit(m, i, 2)
        return OpResult("ie", i, remap=remap, vines=self._vines_identity(),
                        stats={"transpositions": transpositions})

    def inward_contraction(self, i: int) -> OpResult:
        steps = self._steps()
        m = len(steps)
        if not 1 <= i <= m - 1:
            raise ContractViolation(f"position {i} out of range 1..{m - 1}")
        if not (steps[i - 1].is_add and not steps[i].is_add
                and steps[i - 1].simplex == steps[i].simplex):
            raise IllegalContraction("steps are not an add/delete pair of one simplex")
        copy_pos = self.delta.phi[i - 1]
        cone_pos = self.delta.phi[i]
        transpositions = 0
        # cone first, then the copy, each to the end
        for p in range(cone_pos, len(self.delta.cells) - 1):
            self.matrix.transpose(p)
            self.delta.cells[p], self.delta.cells[p + 1] = \
                self.delta.cells[p + 1], self.delta.cells[p]
            transpositions += 1
        for p in range(copy_pos, len(self.delta.cells) - 2):
            self.matrix.transpose(p)
            self.delta.cells[p], self.delta.cells[p + 1] = \
                self.delta.cells[p + 1], self.delta.cells[p]
            transpositions += 1
        self.matrix.pop_column()
        self.matrix.pop_column()
        self.delta.cells.pop()
        self.delta.cells.pop()
        del steps[i - 1:i + 1]
        self._rebuild_phi()
        remap = renumber_after_edit(m, i, -2)
        return OpResult("ic", i, remap=remap, vines=self._vines_identity(),
                        stats={"transpositions": transpositions})

    def outward_expansion(self, i: int, sigma: Simplex) -> OpResult:
        raise UnsupportedOnFzzPath("oe", i)

    def outward_contraction(self, i: int) -> OpResult:
        raise UnsupportedOnFzzPath("oc", i)

    def apply(self, op: str, position: int, sigma: Optional[Simplex] = None) -> OpResult:
        if op == "fs":
            return self.forward_switch(position)
        if op == "bs":
            return self.backward_switch(position)
        if op == "os":
            return self.outward_switch(position)
        if op == "is":
            return self.inward_switch(position)
        if op == "ie":
            return self.inward_expansion(position, sigma)
        if op == "ic":
            return self.inward_contraction(position)
        if op in ("oe", "oc"):
            raise UnsupportedOnFzzPath(op, position)
        raise ContractViolation(f"unknown operation {op!r}")


def _check_switch_site(steps: list[Step], i: int, first: str, second: str) -> None:
    if not 1 <= i <= len(steps) - 1:
        raise ContractViolation(f"position {i} out of range 1..{len(steps) - 1}")
    if steps[i - 1].direction != first or steps[i].direction != second:
        raise ContractViolation(
            f"steps at {i - 1},{i} are {steps[i - 1].direction},{steps[i].direction}; "
            f"expected {first},{second}")


def _fresh_cell_id(delta: DeltaFiltration) -> int:
    return 1 + max(cell.id for cell in delta.cells)


def _cone_index(delta: DeltaFiltration) -> dict[int, int]:
    return {cell.base: cell.id for cell in delta.cells if cell.tag == CONE}


def _next_occurrence(steps: list[Step], upto: int, sigma: Simplex) -> int:
    return sum(1 for s in steps[:upto] if s.is_add and s.simplex == sigma)


def _current_cells(delta: DeltaFiltration, steps: list[Step], upto: int) -> dict[Simplex, DeltaCell]:
    """The copy cell currently standing for each simplex present at position upto.

    Each addition step's copy sits at its phi position, so the replay can
    look cells up by position instead of trusting stored occurrence counters.
    """
    current: dict[Simplex, DeltaCell] = {}
    for j, step in enumerate(steps[:upto]):
        if step.is_add:
            current[step.simplex] = delta.cells[delta.phi[j]]
        else:
            current.pop(step.simplex)
    return current
