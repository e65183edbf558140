from __future__ import annotations

import random

import pytest

from zzpers.errors import ContractViolation
from zzpers.filtration import ZigzagFiltration, renumber_after_edit
from zzpers.planner import random_filtration

from conftest import filtration, simplex


class TestValidate:
    def test_minimal_ok(self):
        assert filtration("+0", "-0").validate() == []

    def test_missing_faces_and_nonempty_end(self):
        bad = filtration("+0.1")
        msgs = bad.validate()
        assert any("missing faces" in m for m in msgs)
        assert any("not empty" in m for m in msgs)

    def test_coface_present_at_delete(self):
        bad = filtration("+0", "+1", "+0.1", "-1")
        msgs = bad.validate()
        assert any("has cofaces" in m for m in msgs)

    def test_double_add(self):
        bad = ZigzagFiltration.from_moves([("i", [0]), ("i", [0])])
        assert any("already present" in m for m in bad.validate())


class TestComplexAt:
    def test_replay(self, tri):
        assert tri.complex_at(3).frozen() == frozenset(
            {simplex(0), simplex(1), simplex(0, 1)})

    def test_ends_empty(self, tri):
        assert len(tri.complex_at(0)) == 0
        assert len(tri.complex_at(6)) == 0

    def test_out_of_range(self, tri):
        with pytest.raises(ContractViolation):
            tri.complex_at(7)


class TestBirthDeathOrders:
    def test_birth_forward_clause(self, tri):
        # step 1 adds a simplex, so the earlier birth position comes first
        assert tri.birth_order_less(1, 2)

    def test_birth_backward_clause(self, tri):
        # step 3 is a deletion, so position 4 precedes position 1
        assert tri.birth_order_less(4, 1)

    def test_death_forward_clause(self, tri):
        assert tri.death_order_less(2, 4)

    def test_death_backward_clause(self, tri):
        assert tri.death_order_less(5, 4)

    def test_equal_positions_rejected(self, tri):
        with pytest.raises(ContractViolation):
            tri.birth_order_less(2, 2)

    def test_orders_are_strict_and_total(self, rng):
        for _ in range(25):
            f = random_filtration(rng, [0, 1, 2, 3], dim_cap=2,
                                  max_simplices=8, max_length=20)
            m = len(f.steps)
            if m < 4:
                continue
            positions = range(1, m)
            for less in (f.birth_order_less, f.death_order_less):
                for x in positions:
                    for y in positions:
                        if x == y:
                            continue
                        assert less(x, y) != less(y, x)
                # transitivity via sorting twice
                import functools
                key = functools.cmp_to_key(
                    lambda a, b: -1 if less(a, b) else 1)
                once = sorted(positions, key=key)
                assert sorted(once, key=key) == once


class TestIntervalLess:
    def test_mixed_pair(self, tri):
        # birth order favors 1 over 2, but death order favors 2 over 5
        assert not tri.interval_less((1, 5), (2, 2))
        assert not tri.interval_less((2, 2), (1, 5))

    def test_identical_intervals(self, tri):
        assert not tri.interval_less((2, 2), (2, 2))

    def test_disjoint_rejected(self, tri):
        with pytest.raises(ContractViolation):
            tri.interval_less((1, 1), (4, 4))


class TestRenumber:
    def test_expansion_shifts_up(self):
        remap = renumber_after_edit(6, 3, 2)
        assert remap[2] == 2 and remap[3] == 5 and remap[6] == 8

    def test_contraction_shifts_down(self):
        remap = renumber_after_edit(8, 3, -2)
        assert remap[2] == 2 and remap[3] is None
        assert remap[4] == 2 and remap[5] == 3

    def test_composition_is_identity(self):
        up = renumber_after_edit(6, 3, 2)
        down = renumber_after_edit(8, 3, -2)
        for pos in range(7):
            assert down[up[pos]] == pos

    def test_bad_delta(self):
        with pytest.raises(ContractViolation):
            renumber_after_edit(6, 3, 1)


class TestTextFormat:
    def test_roundtrip(self, tri):
        again = ZigzagFiltration.from_text(tri.to_text())
        assert again.moves() == tri.moves()

    def test_comments_and_blanks(self):
        f = ZigzagFiltration.from_text("# header\n\ni 0  # add a vertex\nd 0\n")
        assert f.moves() == [("i", (0,)), ("d", (0,))]

    def test_parse_error_carries_line(self):
        with pytest.raises(ContractViolation, match="line 2"):
            ZigzagFiltration.from_text("i 0\nx 1\n")

    def test_step_ids_stable_and_unique(self, tri):
        ids = [s.id for s in tri.steps]
        assert len(set(ids)) == len(ids)
