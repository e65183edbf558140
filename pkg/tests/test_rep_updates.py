from __future__ import annotations

import random

import pytest

from zzpers.chains import Simplex
from zzpers.errors import (ContractViolation, IllegalContraction,
                           IllegalExpansion, IllegalSwitch)
from zzpers.fzz import barcode_from_scratch
from zzpers.planner import random_filtration, random_script, state_from_filtration
from zzpers.rep_updates import (PersistenceState, apply_op, boundary_basis,
                                forward_switch, inward_contraction,
                                inward_expansion, outward_contraction,
                                outward_expansion)
from zzpers.reps import ChainStore

from conftest import filtration, simplex


def certified(state):
    errs = state.check_certificate()
    assert not errs, errs
    assert state.barcode() == barcode_from_scratch(state.filtration)


class TestForwardSwitch:
    def test_triangle_switch_preserves_barcode(self, tri):
        state = state_from_filtration(tri)
        before = state.barcode()
        forward_switch(state, 1)
        certified(state)
        assert state.barcode() == before == [(0, 1, 5), (0, 2, 2), (0, 4, 4)]

    def test_face_order_protected(self, tri):
        state = state_from_filtration(tri)
        with pytest.raises(IllegalSwitch):
            forward_switch(state, 2)  # the edge may not precede its vertex

    def test_case_d_repairs_neighbours(self):
        # step 2 ends a bar at 2, step 3 starts one at 4; switching the two
        # additions must keep a certified pairing
        f = filtration("+0", "+1", "+0.1", "+2", "-2", "-0.1", "-1", "-0")
        state = state_from_filtration(f)
        assert state.barcode() == [(0, 1, 7), (0, 2, 2), (0, 4, 4), (0, 6, 6)]
        forward_switch(state, 3)
        certified(state)

    def test_all_four_cases_hit(self, rng):
        seen = set()
        for trial in range(40):
            f = random_filtration(rng, [0, 1, 2, 3], dim_cap=2,
                                  max_simplices=8, max_length=20)
            base = state_from_filtration(f)
            for i in range(1, len(f.steps)):
                a, b = f.steps[i - 1], f.steps[i]
                if not (a.is_add and b.is_add) or set(a.simplex) <= set(b.simplex):
                    continue
                case = (base.interval_at_birth(i) is not None,
                        base.interval_at_birth(i + 1) is not None)
                state = state_from_filtration(f)
                forward_switch(state, i)
                certified(state)
                seen.add(case)
            if len(seen) == 4:
                break
        assert seen == {(True, True), (True, False), (False, True), (False, False)}


class TestBackwardSwitch:
    def test_mirrors_forward(self, tri):
        state = state_from_filtration(tri)
        before = state.barcode()
        apply_op(state, "bs", 5)  # -1,-0 commute
        certified(state)
        assert state.barcode() == before

    def test_face_order_protected(self, tri):
        state = state_from_filtration(tri)
        with pytest.raises(IllegalSwitch):
            apply_op(state, "bs", 4)  # vertex 1 may not go before its edge


class TestMixedSwitches:
    def test_outward_requires_distinct(self):
        f = filtration("+0", "-0")
        state = state_from_filtration(f)
        with pytest.raises(IllegalSwitch):
            apply_op(state, "os", 1)

    def test_point_bar_drops_dimension(self):
        # the 1-cycle lives only between +0.2 and -0.1: an outward switch
        # there turns the bar [6,6] into a 0-dimensional one
        f = filtration("+0", "+1", "+2", "+0.1", "+1.2", "+0.2",
                       "-0.1", "-0.2", "-1.2", "-2", "-1", "-0")
        state = state_from_filtration(f)
        assert (1, 6, 6) in state.barcode()
        apply_op(state, "os", 6)
        certified(state)
        assert (1, 6, 6) not in state.barcode()
        assert (0, 6, 6) in state.barcode()

    def test_inward_switch_rewires_neighbours(self):
        f = filtration("+0", "+1", "-1", "+2", "-2", "-0")
        state = state_from_filtration(f)
        assert state.barcode() == [(0, 1, 5), (0, 2, 2), (0, 4, 4)]
        apply_op(state, "is", 3)
        certified(state)
        assert state.barcode() == [(0, 1, 5), (0, 2, 3), (0, 3, 4)]


class TestOutwardExpansion:
    def test_injective_example(self):
        f = filtration("+0", "+1", "-1", "-0")
        state = state_from_filtration(f)
        res = outward_expansion(state, 2, simplex(0))
        certified(state)
        target = filtration("+0", "+1", "-0", "+0", "-1", "-0")
        assert state.filtration.moves() == target.moves()
        assert state.barcode() == barcode_from_scratch(target)
        assert res.stats["injective"] == 1

    def test_surjective_creates_boundary_bar(self):
        f = filtration("+0", "+1", "+2", "+0.1", "+1.2", "+0.2", "+0.1.2",
                       "-0.1.2", "-0.2", "-1.2", "-0.1", "-2", "-1", "-0")
        state = state_from_filtration(f)
        res = outward_expansion(state, 7, simplex(0, 1, 2))
        certified(state)
        assert res.stats["injective"] == 0
        assert (1, 8, 8) in state.barcode()

    def test_rejects_missing_or_covered(self, tri):
        state = state_from_filtration(tri)
        with pytest.raises(IllegalExpansion):
            outward_expansion(state, 3, simplex(2))
        with pytest.raises(IllegalExpansion):
            outward_expansion(state, 3, simplex(0))  # the edge covers it


class TestOutwardContraction:
    def test_inverse_of_expansion(self):
        f = filtration("+0", "+1", "-0", "+0", "-1", "-0")
        state = state_from_filtration(f)
        outward_contraction(state, 3)
        certified(state)
        assert state.filtration.moves() == filtration("+0", "+1", "-1", "-0").moves()

    def test_surjective_removes_point_bar(self):
        f = filtration("+0", "+1", "-1", "+1", "-1", "-0")
        state = state_from_filtration(f)
        before = len(state.intervals)
        res = outward_contraction(state, 3)
        certified(state)
        assert len(state.intervals) == before - 1
        assert res.destroyed_ids()

    def test_rejects_mismatched_pair(self, tri):
        state = state_from_filtration(tri)
        with pytest.raises(IllegalContraction):
            outward_contraction(state, 2)


class TestInwardExpansionContraction:
    def test_expansion_example(self, tri):
        f = filtration("+0", "+1", "-1", "-0")
        state = state_from_filtration(f)
        res = inward_expansion(state, 2, simplex(0, 1))
        certified(state)
        assert state.filtration.moves() == tri.moves()
        assert state.barcode() == [(0, 1, 5), (0, 2, 2), (0, 4, 4)]
        assert res.stats["injective"] == 0  # the edge boundary was no boundary

    def test_injective_adds_point_bar(self, rng):
        # fill the last face of a tetrahedron shell: its boundary bounds
        adds = ["+0", "+1", "+2", "+3", "+0.1", "+0.2", "+0.3", "+1.2",
                "+1.3", "+2.3", "+0.1.3", "+0.2.3", "+1.2.3"]
        dels = ["-" + a[1:] for a in reversed(adds)]
        f = filtration(*(adds + dels))
        state = state_from_filtration(f)
        res = inward_expansion(state, 13, simplex(0, 1, 2))
        certified(state)
        assert res.stats["injective"] == 1
        assert (2, 14, 14) in state.barcode()

    def test_contraction_of_triangle_edge(self, tri):
        state = state_from_filtration(tri)
        inward_contraction(state, 3)
        certified(state)
        assert state.barcode() == [(0, 1, 3), (0, 2, 2)]

    def test_rejects_present_simplex(self, tri):
        state = state_from_filtration(tri)
        with pytest.raises(IllegalExpansion):
            inward_expansion(state, 3, simplex(0, 1))

    def test_rejects_wrong_pair(self, tri):
        state = state_from_filtration(tri)
        with pytest.raises(IllegalContraction):
            inward_contraction(state, 2)


class TestAtomicity:
    def test_failed_op_leaves_state_intact(self, tri):
        state = state_from_filtration(tri)
        before_steps = state.filtration.moves()
        before_bars = state.barcode()
        for op, pos, sig in [("fs", 2, None), ("oc", 2, None), ("ic", 2, None),
                             ("oe", 3, simplex(2)), ("ie", 3, simplex(0, 1)),
                             ("os", 9, None)]:
            with pytest.raises(ContractViolation):
                apply_op(state, op, pos, sig)
            assert state.filtration.moves() == before_steps
            assert state.barcode() == before_bars
            certified(state)


class TestBoundaryBasis:
    def test_no_two_simplices_means_no_one_boundaries(self):
        cx = {simplex(0), simplex(1), simplex(2),
              simplex(0, 1), simplex(1, 2), simplex(0, 2)}
        assert boundary_basis(cx, 1) == []

    def test_full_triangle(self):
        store = ChainStore()
        cx = {simplex(0), simplex(1), simplex(2), simplex(0, 1), simplex(1, 2),
              simplex(0, 2), simplex(0, 1, 2)}
        basis = boundary_basis(cx, 1, store)
        assert len(basis) == 1
        bchain, witness = basis[0]
        assert witness == store.chain(2, [simplex(0, 1, 2)])
        assert store.boundary(witness) == bchain

    def test_witnesses_bound_their_columns(self, rng):
        from itertools import combinations
        store = ChainStore()
        for _ in range(20):
            verts = range(5)
            cx = {simplex(v) for v in verts}
            for size in (2, 3):
                for combo in combinations(verts, size):
                    if rng.random() < 0.55 and all(
                            simplex(*f) in cx for f in combinations(combo, size - 1)):
                        cx.add(simplex(*combo))
            for p in (0, 1):
                for bchain, witness in boundary_basis(cx, p, store):
                    assert store.boundary(witness) == bchain


class TestRandomizedCertificates:
    def test_every_op_certified_and_oracle_equal(self, rng):
        ops = 0
        for trial in range(25):
            f = random_filtration(rng, [0, 1, 2, 3, 4], dim_cap=2,
                                  max_simplices=10, max_length=24)
            state = state_from_filtration(f)
            try:
                script = random_script(f, 12, seed=trial, max_length=36)
            except Exception:
                continue
            for sop in script:
                apply_op(state, sop.op, sop.pos, sop.simplex)
                certified(state)
                ops += 1
        assert ops > 150

    def test_length_and_count_deltas(self, rng):
        for trial in range(10):
            f = random_filtration(rng, [0, 1, 2, 3], dim_cap=2,
                                  max_simplices=8, max_length=20)
            state = state_from_filtration(f)
            try:
                script = random_script(f, 10, seed=trial + 100, max_length=30)
            except Exception:
                continue
            for sop in script:
                m0, bars0 = len(state.filtration.steps), len(state.intervals)
                apply_op(state, sop.op, sop.pos, sop.simplex)
                m1, bars1 = len(state.filtration.steps), len(state.intervals)
                if sop.op in ("fs", "bs", "os", "is"):
                    assert (m1, bars1) == (m0, bars0)
                elif sop.op in ("oe", "ie"):
                    assert m1 == m0 + 2 and bars1 == bars0 + 1
                else:
                    assert m1 == m0 - 2 and bars1 == bars0 - 1
