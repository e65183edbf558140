from __future__ import annotations

import random

import pytest

from zzpers.chains import Simplex
from zzpers.filtration import ZigzagFiltration


def simplex(*verts: int) -> Simplex:
    return Simplex(verts)


def filtration(*moves: str) -> ZigzagFiltration:
    """Build from compact move strings like '+0', '-0.1' (dots split vertices)."""
    out = []
    for move in moves:
        direction = "i" if move[0] == "+" else "d"
        verts = [int(tok) for tok in move[1:].split(".")]
        out.append((direction, verts))
    return ZigzagFiltration.from_moves(out)


@pytest.fixture
def tri():
    """The running triangle example: two vertices, one edge, torn down."""
    return filtration("+0", "+1", "+0.1", "-0.1", "-1", "-0")


@pytest.fixture
def rng():
    return random.Random(20240817)
