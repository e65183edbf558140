"""Representative sequences: per-interval certificates of cycles and chains.

A representative for an interval [b,d] is a cycle z_i at every index of the
interval plus bounding chains c_i connecting consecutive cycles, subject to
birth and death conditions at the ends.  A pairing in which every interval
carries a valid representative is automatically the barcode, which is what
makes the validator here a correctness certificate.

Chains are interned per state so that equal chains are one object: identity
tests are O(1), boundaries memoize, and runs of equal cycles share storage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .chains import Chain, Simplex, chain_add, chain_boundary, is_cycle
from .errors import ContractViolation
from .filtration import Step, ZigzagFiltration

FULL = "full"
POST_BIRTH = "post_birth"
PRE_DEATH = "pre_death"


class ChainStore:
    """Interning pool for chains with a memoized boundary map."""

    def __init__(self) -> None:
        self._pool: dict[Chain, Chain] = {}
        self._boundaries: dict[Chain, Chain] = {}
        self.merge_count = 0  # chain additions performed, for cost assertions

    def intern(self, chain: Chain) -> Chain:
        got = self._pool.get(chain)
        if got is None:
            self._pool[chain] = chain
            return chain
        return got

    def chain(self, dimension: int, simplices=()) -> Chain:
        return self.intern(Chain(dimension, simplices))

    def add(self, a: Chain, b: Chain) -> Chain:
        self.merge_count += 1
        if not a:
            return self.intern(b)
        if not b:
            return self.intern(a)
        return self.intern(chain_add(a, b))

    def boundary(self, chain: Chain) -> Chain:
        chain = self.intern(chain)
        got = self._boundaries.get(chain)
        if got is None:
            got = self.intern(chain_boundary(chain))
            self._boundaries[chain] = got
        return got

    def __len__(self) -> int:
        return len(self._pool)


@dataclass
class RepSeq:
    """Cycles over [b,d] and chains over [b-1,d]; None marks an undefined chain.

    cycles[k] is the cycle at index b+k; chains[k] is the chain at index
    b-1+k, so chains[0] is the birth chain and chains[-1] the death chain.
    Instances are treated as immutable: operations build new ones.
    """
    b: int
    d: int
    dim: int
    cycles: list[Chain]
    chains: list[Optional[Chain]]
    kind: str = FULL
    comparable: Optional[bool] = None  # set by rep_sum: summands were order-comparable

    def __post_init__(self):
        if self.b > self.d:
            raise ContractViolation(f"interval [{self.b},{self.d}] is empty")
        if len(self.cycles) != self.d - self.b + 1:
            raise ContractViolation("cycle list length mismatch")
        if len(self.chains) != self.d - self.b + 2:
            raise ContractViolation("chain list length mismatch")

    def cycle_at(self, i: int) -> Chain:
        return self.cycles[i - self.b]

    def chain_at(self, i: int) -> Optional[Chain]:
        """The chain c_i, for b-1 <= i <= d."""
        return self.chains[i - (self.b - 1)]

    @property
    def interval(self) -> tuple[int, int]:
        return (self.b, self.d)

    def dump(self) -> str:
        lines = []
        for i in range(self.b, self.d + 1):
            z = " ".join(sorted(s.text() for s in self.cycle_at(i))) or "0"
            c = self.chain_at(i)
            ctext = "UNDEF" if c is None else (" ".join(sorted(s.text() for s in c)) or "0")
            lines.append(f"{i} : z = {z} ; c = {ctext}")
        return "\n".join(lines)


def validate_rep(filtration: ZigzagFiltration, rep: RepSeq,
                 complexes: Optional[Sequence[frozenset[Simplex]]] = None,
                 store: Optional[ChainStore] = None) -> Optional[str]:
    """Return None if rep satisfies every condition, else the first violation."""
    if complexes is None:
        complexes = filtration.complexes()
    if store is None:
        store = ChainStore()
    steps = filtration.steps
    m = len(steps)
    b, d, p = rep.b, rep.d, rep.dim
    if not (1 <= b <= d <= m - 1):
        return f"interval [{b},{d}] out of range 1..{m - 1}"

    for i in range(b, d + 1):
        z = rep.cycle_at(i)
        if z.dimension != p:
            return f"index {i}: cycle has dimension {z.dimension}, expected {p}"
        if not z.simplices <= complexes[i]:
            return f"index {i}: cycle not contained in the complex"
        if not is_cycle(z):
            return f"index {i}: not a cycle"

    for i in range(b, d):
        c = rep.chain_at(i)
        if c is None:
            return f"index {i}: missing connecting chain"
        if c.dimension != p + 1:
            return f"index {i}: chain has dimension {c.dimension}, expected {p + 1}"
        home = complexes[i + 1] if steps[i].is_add else complexes[i]
        if not c.simplices <= home:
            return f"index {i}: chain not contained in its complex"
        if store.boundary(c) != store.add(rep.cycle_at(i), rep.cycle_at(i + 1)):
            return f"index {i}: chain does not bound the cycle difference"

    if rep.kind != PRE_DEATH:
        step = steps[b - 1]
        c = rep.chain_at(b - 1)
        z = rep.cycle_at(b)
        if step.is_add:
            if c is not None:
                return f"birth: chain must be undefined after an addition"
            if step.simplex not in z:
                return f"birth: {step.simplex.text()} missing from the birth cycle"
        else:
            if c is None:
                return f"birth: chain required after a deletion"
            if c.dimension != p + 1:
                return f"birth: chain has dimension {c.dimension}"
            if not c.simplices <= complexes[b - 1]:
                return f"birth: chain not contained in the pre-deletion complex"
            if step.simplex not in c:
                return f"birth: {step.simplex.text()} missing from the birth chain"
            if store.boundary(c) != z:
                return f"birth: chain does not bound the birth cycle"

    if rep.kind != POST_BIRTH:
        step = steps[d]
        c = rep.chain_at(d)
        z = rep.cycle_at(d)
        if step.is_add:
            if c is None:
                return f"death: chain required before an addition"
            if c.dimension != p + 1:
                return f"death: chain has dimension {c.dimension}"
            if not c.simplices <= complexes[d + 1]:
                return f"death: chain not contained in the post-addition complex"
            if step.simplex not in c:
                return f"death: {step.simplex.text()} missing from the death chain"
            if store.boundary(c) != z:
                return f"death: chain does not bound the death cycle"
        else:
            if c is not None:
                return f"death: chain must be undefined before a deletion"
            if step.simplex not in z:
                return f"death: {step.simplex.text()} missing from the death cycle"
    return None


def prefix(rep: RepSeq, i: int) -> RepSeq:
    """Truncate to a post-birth representative for [b, i]."""
    if not rep.b <= i <= rep.d:
        raise ContractViolation(f"{i} outside [{rep.b},{rep.d}]")
    k = i - rep.b
    return RepSeq(rep.b, i, rep.dim, rep.cycles[:k + 1],
                  rep.chains[:k + 1] + [None], kind=POST_BIRTH)


def suffix(rep: RepSeq, i: int) -> RepSeq:
    """Truncate to a pre-death representative for [i, d]."""
    if not rep.b <= i <= rep.d:
        raise ContractViolation(f"{i} outside [{rep.b},{rep.d}]")
    k = i - rep.b
    return RepSeq(i, rep.d, rep.dim, rep.cycles[k:],
                  [None] + rep.chains[k + 1:], kind=PRE_DEATH)


def sum_post_birth(f: ZigzagFiltration, r1: RepSeq, r2: RepSeq,
                   store: ChainStore) -> RepSeq:
    """Sum two post-birth representatives ending at one index; r1's birth
    must precede r2's, and the result is a post-birth rep for r2's interval."""
    if r1.d != r2.d:
        raise ContractViolation("post-birth sums need a common final index")
    if r1.dim != r2.dim:
        raise ContractViolation("dimension mismatch")
    if r1.b == r2.b or not f.birth_order_less(r1.b, r2.b):
        raise ContractViolation("first birth must strictly precede the second")
    i = r1.d
    b1, b2 = r1.b, r2.b
    if b1 < b2:
        cycles = [store.add(r1.cycle_at(j), r2.cycle_at(j)) for j in range(b2, i + 1)]
        chains: list[Optional[Chain]] = [None]
        chains += [store.add(r1.chain_at(j), r2.chain_at(j)) for j in range(b2, i)]
        chains.append(None)
    else:
        if r1.chains[0] is None:
            raise ContractViolation("backward-born summand is missing its birth chain")
        cycles = [r2.cycle_at(j) for j in range(b2, b1)]
        cycles += [store.add(r1.cycle_at(j), r2.cycle_at(j)) for j in range(b1, i + 1)]
        chains = [r2.chains[0]]
        chains += [r2.chain_at(j) for j in range(b2, b1 - 1)]
        chains.append(store.add(r1.chains[0], r2.chain_at(b1 - 1)))
        chains += [store.add(r1.chain_at(j), r2.chain_at(j)) for j in range(b1, i)]
        chains.append(None)
    return RepSeq(b2, i, r1.dim, cycles, chains, kind=POST_BIRTH)


def sum_pre_death(f: ZigzagFiltration, r1: RepSeq, r2: RepSeq,
                  store: ChainStore) -> RepSeq:
    """Sum two pre-death representatives starting at one index; r1's death
    must precede r2's, and the result is a pre-death rep for r2's interval."""
    if r1.b != r2.b:
        raise ContractViolation("pre-death sums need a common starting index")
    if r1.dim != r2.dim:
        raise ContractViolation("dimension mismatch")
    if r1.d == r2.d or not f.death_order_less(r1.d, r2.d):
        raise ContractViolation("first death must strictly precede the second")
    i = r1.b
    d1, d2 = r1.d, r2.d
    if d1 > d2:
        cycles = [store.add(r1.cycle_at(j), r2.cycle_at(j)) for j in range(i, d2 + 1)]
        chains: list[Optional[Chain]] = [None]
        chains += [store.add(r1.chain_at(j), r2.chain_at(j)) for j in range(i, d2)]
        chains.append(None)
    else:
        if r1.chains[-1] is None:
            raise ContractViolation("forward-dying summand is missing its death chain")
        cycles = [store.add(r1.cycle_at(j), r2.cycle_at(j)) for j in range(i, d1 + 1)]
        cycles += [r2.cycle_at(j) for j in range(d1 + 1, d2 + 1)]
        chains = [None]
        chains += [store.add(r1.chain_at(j), r2.chain_at(j)) for j in range(i, d1)]
        chains.append(store.add(r1.chains[-1], r2.chain_at(d1)))
        chains += [r2.chain_at(j) for j in range(d1 + 1, d2)]
        chains.append(r2.chains[-1])
    return RepSeq(i, d2, r1.dim, cycles, chains, kind=PRE_DEATH)


def concat(f: ZigzagFiltration, r1: RepSeq, r2: RepSeq, witness: Chain,
           store: ChainStore, complexes=None) -> RepSeq:
    """Splice a post-birth rep for [b,i] onto a pre-death rep for [i,d].

    The caller supplies the homology witness: boundary(witness) must equal
    the sum of the two cycles at the junction, with witness inside K_i.
    """
    if r1.d != r2.b:
        raise ContractViolation("representatives do not meet at a common index")
    if r1.dim != r2.dim:
        raise ContractViolation("dimension mismatch")
    i = r1.d
    if witness.dimension != r1.dim + 1:
        raise ContractViolation("witness has the wrong dimension")
    if store.boundary(witness) != store.add(r1.cycle_at(i), r2.cycle_at(i)):
        raise ContractViolation("witness does not bound the junction difference")
    if witness:  # the empty witness sits in every complex
        if complexes is None:
            complexes = f.complexes()
        if not witness.simplices <= complexes[i]:
            raise ContractViolation("witness not contained in the junction complex")
    joint = None if r1.chains[-2] is None else store.add(r1.chains[-2], witness)
    cycles = r1.cycles[:-1] + r2.cycles
    chains = r1.chains[:-2] + [joint] + r2.chains[1:]
    return RepSeq(r1.b, r2.d, r1.dim, cycles, chains, kind=FULL)


def rep_sum(f: ZigzagFiltration, r1: RepSeq, r2: RepSeq, i: int,
            store: ChainStore) -> RepSeq:
    """General sum of two full representatives sharing the index i."""
    for r in (r1, r2):
        if not r.b <= i <= r.d:
            raise ContractViolation(f"{i} not in [{r.b},{r.d}]")
    if r1.b == r2.b or r1.d == r2.d:
        raise ContractViolation("summands must have distinct births and deaths")
    p1, p2 = prefix(r1, i), prefix(r2, i)
    if f.birth_order_less(r2.b, r1.b):
        p1, p2 = p2, p1
    s1, s2 = suffix(r1, i), suffix(r2, i)
    if f.death_order_less(r2.d, r1.d):
        s1, s2 = s2, s1
    head = sum_post_birth(f, p1, p2, store)
    tail = sum_pre_death(f, s1, s2, store)
    out = concat(f, head, tail, store.chain(r1.dim + 1), store)
    out.comparable = (f.birth_order_less(r1.b, r2.b) == f.death_order_less(r1.d, r2.d))
    return out
