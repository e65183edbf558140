"""Operation scripts: reduce any filtration to empty, transform one into
another, and sample random legal operations for fuzzing.

Every valid filtration can be emptied by pushing additions past the first
deletion block (inward switches / outward contractions) until the filtration
is up-down, then repeatedly rotating the earliest-deleted simplex to the top
of the addition block and contracting it away.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .chains import Simplex, SimplicialComplex
from .errors import ContractViolation, Exhausted
from .filtration import ADD, DELETE, ZigzagFiltration
from .rep_updates import PersistenceState, apply_op
from .results import OpResult

OPS = ("fs", "bs", "os", "is", "oe", "ie", "oc", "ic")
EXPANSIONS = ("oe", "ie")


@dataclass(frozen=True)
class ScriptOp:
    op: str
    pos: int
    # expansions need the simplex; contractions may carry it for invertibility
    simplex: Optional[Simplex] = None

    def text(self) -> str:
        if self.op in EXPANSIONS and self.simplex is not None:
            return f"{self.op} {self.pos} {self.simplex.text()}"
        return f"{self.op} {self.pos}"


def script_to_text(script: Iterable[ScriptOp]) -> str:
    lines = [s.text() for s in script]
    return "\n".join(lines) + ("\n" if lines else "")


def script_from_text(text: str) -> list[ScriptOp]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] not in OPS:
            raise ContractViolation(f"line {lineno}: unknown op {toks[0]!r}")
        if len(toks) < 2:
            raise ContractViolation(f"line {lineno}: missing position")
        try:
            pos = int(toks[1])
        except ValueError:
            raise ContractViolation(f"line {lineno}: bad position {toks[1]!r}") from None
        simplex = None
        if len(toks) > 2:
            if toks[0] not in EXPANSIONS:
                raise ContractViolation(f"line {lineno}: {toks[0]} takes no simplex")
            simplex = Simplex(int(t) for t in toks[2:])
        elif toks[0] in EXPANSIONS:
            raise ContractViolation(f"line {lineno}: {toks[0]} needs a simplex")
        out.append(ScriptOp(toks[0], pos, simplex))
    return out


def apply_to_filtration(f: ZigzagFiltration, op: ScriptOp) -> None:
    """Apply one operation to a bare filtration (no persistence bookkeeping)."""
    steps = f.steps
    i = op.pos
    if op.op in ("fs", "bs", "os", "is"):
        _require(1 <= i <= len(steps) - 1, f"switch position {i} out of range")
        a, b = steps[i - 1], steps[i]
        want = {"fs": (ADD, ADD), "bs": (DELETE, DELETE),
                "os": (ADD, DELETE), "is": (DELETE, ADD)}[op.op]
        _require((a.direction, b.direction) == want, f"{op.op} at {i}: wrong step kinds")
        if op.op == "fs":
            _require(not set(a.simplex) <= set(b.simplex), "illegal forward switch")
        elif op.op == "bs":
            _require(not set(b.simplex) <= set(a.simplex), "illegal backward switch")
        else:
            _require(a.simplex != b.simplex, f"illegal {op.op}")
        steps[i - 1], steps[i] = steps[i], steps[i - 1]
    elif op.op in ("oe", "ie"):
        _require(0 <= i <= len(steps), f"expansion position {i} out of range")
        cx = f.complex_at(i)
        if op.op == "oe":
            _require(op.simplex in cx and not cx.has_cofaces(op.simplex),
                     "illegal outward expansion")
            first, second = DELETE, ADD
        else:
            _require(cx.can_add(op.simplex), "illegal inward expansion")
            first, second = ADD, DELETE
        steps.insert(i, f.new_step(first, op.simplex))
        steps.insert(i + 1, f.new_step(second, op.simplex))
    else:
        _require(1 <= i <= len(steps) - 1, f"contraction position {i} out of range")
        a, b = steps[i - 1], steps[i]
        want = (DELETE, ADD) if op.op == "oc" else (ADD, DELETE)
        _require((a.direction, b.direction) == want and a.simplex == b.simplex,
                 f"illegal {op.op} at {i}")
        del steps[i - 1:i + 1]


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise ContractViolation(message)


def reduce_to_empty(f: ZigzagFiltration) -> list[ScriptOp]:
    """A script of atomic operations taking f to the empty filtration."""
    bad = f.validate()
    if bad:
        raise ContractViolation("invalid filtration: " + "; ".join(bad))
    sim = f.copy()
    script: list[ScriptOp] = []

    def emit(op: str, pos: int, simplex: Optional[Simplex] = None) -> None:
        sop = ScriptOp(op, pos, simplex)
        apply_to_filtration(sim, sop)
        script.append(sop)

    # phase 1: push additions before the deletion blocks until up-down
    while True:
        u = _first_add_after_delete(sim)
        if u is None:
            break
        g, h = sim.steps[u - 1].simplex, sim.steps[u].simplex
        if g == h:
            emit("oc", u, g)
        else:
            emit("is", u)

    # phase 2: contract the up-down filtration away
    while sim.steps:
        n = len(sim.steps) // 2
        target = sim.steps[n].simplex  # first simplex to be deleted
        s = next(k for k in range(n) if sim.steps[k].simplex == target)
        for k in range(s, n - 1):
            emit("fs", k + 1)
        emit("ic", n, target)
    return script


def _first_add_after_delete(f: ZigzagFiltration) -> Optional[int]:
    seen_delete = False
    for j, step in enumerate(f.steps):
        if step.is_add and seen_delete:
            return j
        if not step.is_add:
            seen_delete = True
    return None


_INVERSE = {"fs": "fs", "bs": "bs", "os": "is", "is": "os"}


def invert_script(script: list[ScriptOp]) -> list[ScriptOp]:
    """The reversed script of inverse operations."""
    out = []
    for sop in reversed(script):
        if sop.op in _INVERSE:
            out.append(ScriptOp(_INVERSE[sop.op], sop.pos, None))
        elif sop.op in ("oc", "ic"):
            if sop.simplex is None:
                raise ContractViolation(
                    f"cannot invert {sop.op} without its recorded simplex")
            kind = "oe" if sop.op == "oc" else "ie"
            out.append(ScriptOp(kind, sop.pos - 1, sop.simplex))
        else:
            kind = "oc" if sop.op == "oe" else "ic"
            out.append(ScriptOp(kind, sop.pos + 1, sop.simplex))
    return out


def transform(f1: ZigzagFiltration, f2: ZigzagFiltration) -> list[ScriptOp]:
    """A script taking f1 to f2, step for step."""
    down = reduce_to_empty(f1)
    up = invert_script(reduce_to_empty(f2))
    return down + up


def state_from_filtration(f: ZigzagFiltration) -> PersistenceState:
    """Build a certified persistence state by replaying a construction script."""
    state = PersistenceState()
    for sop in invert_script(reduce_to_empty(f)):
        apply_op(state, sop.op, sop.pos, sop.simplex)
    if state.filtration.moves() != f.moves():
        raise AssertionError("construction script did not reproduce the filtration")
    return state


def apply_script(state: PersistenceState, script: Iterable[ScriptOp]) -> list[OpResult]:
    return [apply_op(state, s.op, s.pos, s.simplex) for s in script]


# ----------------------------------------------------------------------
# randomized scripts


def legal_ops_at(f: ZigzagFiltration, pos: int, vertex_pool: list[int],
                 dim_cap: int, allow_expand: bool) -> list[ScriptOp]:
    """All legal operations anchored at one position."""
    steps = f.steps
    m = len(steps)
    out: list[ScriptOp] = []
    if 1 <= pos <= m - 1:
        a, b = steps[pos - 1], steps[pos]
        if a.is_add and b.is_add and not set(a.simplex) <= set(b.simplex):
            out.append(ScriptOp("fs", pos))
        if not a.is_add and not b.is_add and not set(b.simplex) <= set(a.simplex):
            out.append(ScriptOp("bs", pos))
        if a.is_add and not b.is_add and a.simplex != b.simplex:
            out.append(ScriptOp("os", pos))
        if not a.is_add and b.is_add and a.simplex != b.simplex:
            out.append(ScriptOp("is", pos))
        if not a.is_add and b.is_add and a.simplex == b.simplex:
            out.append(ScriptOp("oc", pos, a.simplex))
        if a.is_add and not b.is_add and a.simplex == b.simplex:
            out.append(ScriptOp("ic", pos, a.simplex))
    if allow_expand and 0 <= pos <= m:
        cx = f.complex_at(pos)
        for s in sorted(cx):
            if not cx.has_cofaces(s):
                out.append(ScriptOp("oe", pos, s))
        for s in _addable_simplices(cx, vertex_pool, dim_cap):
            out.append(ScriptOp("ie", pos, s))
    return out


def _addable_simplices(cx: SimplicialComplex, vertex_pool: list[int],
                       dim_cap: int) -> list[Simplex]:
    out = []
    for v in vertex_pool:
        s = Simplex([v])
        if s not in cx:
            out.append(s)
    verts = sorted({v for s in cx for v in s})
    frontier = [s for s in cx if s.dimension < dim_cap]
    for s in frontier:
        top = s[-1]
        for v in verts:
            if v <= top:
                continue
            cand = Simplex(list(s) + [v])
            if cx.can_add(cand):
                out.append(cand)
    return sorted(set(out))


def random_script(f: ZigzagFiltration, k: int, seed: int,
                  vertex_pool: Optional[list[int]] = None, dim_cap: int = 2,
                  max_length: Optional[int] = None) -> list[ScriptOp]:
    """k legal operations sampled at uniformly chosen positions."""
    bad = f.validate()
    if bad:
        raise ContractViolation("invalid filtration: " + "; ".join(bad))
    rng = random.Random(seed)
    sim = f.copy()
    if vertex_pool is None:
        vertex_pool = sorted({v for s in sim.steps for v in s.simplex}) or [0, 1, 2]
    script: list[ScriptOp] = []
    for _ in range(k):
        m = len(sim.steps)
        allow = max_length is None or m < max_length
        positions = list(range(0, m + 1))
        rng.shuffle(positions)
        chosen: Optional[ScriptOp] = None
        for pos in positions:
            ops = legal_ops_at(sim, pos, vertex_pool, dim_cap, allow)
            if ops:
                kinds = sorted({o.op for o in ops})
                kind = rng.choice(kinds)
                chosen = rng.choice([o for o in ops if o.op == kind])
                break
        if chosen is None:
            raise Exhausted(f"no legal operation after {len(script)} steps")
        apply_to_filtration(sim, chosen)
        script.append(chosen)
    return script


def random_filtration(rng: random.Random, vertex_pool: list[int], dim_cap: int = 2,
                      max_simplices: int = 12, max_length: int = 40) -> ZigzagFiltration:
    """A random valid filtration: a random walk of adds/deletes, then teardown."""
    f = ZigzagFiltration()
    cx = SimplicialComplex()
    budget = rng.randrange(0, max_length // 2 + 1)
    seen: set[Simplex] = set()
    for _ in range(budget):
        adds = [] if len(seen) >= max_simplices else \
            _addable_simplices(cx, vertex_pool, dim_cap)
        adds = [s for s in adds if len(seen | {s}) <= max_simplices]
        dels = [s for s in sorted(cx) if not cx.has_cofaces(s)]
        if len(f.steps) + 2 * len(cx) + 2 > max_length:
            break
        moves = [(ADD, s) for s in adds] + [(DELETE, s) for s in dels]
        if not moves:
            break
        direction, s = rng.choice(moves)
        if direction == ADD:
            cx.add(s)
            seen.add(s)
        else:
            cx.delete(s)
        f.steps.append(f.new_step(direction, s))
    while len(cx):
        s = max(cx.simplices, key=lambda t: (t.dimension, t))
        cx.delete(s)
        f.steps.append(f.new_step(DELETE, s))
    assert f.is_valid()
    return f
