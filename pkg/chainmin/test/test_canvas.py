from chainmin.misc import *
from chainmin.canvas import Canvas, plot
from chainmin.core import BooleanLattice
from chainmin.calc import mk_table, compress_to_fixpoint, RankDistribution

import matplotlib
matplotlib.use('Agg')

import os
import pytest


def test_canvas_1(tmp_path):
    canva = Canvas()
    P = BooleanLattice(4)

    a = mk_table(P, 2)
    b = mk_table(P, 3)

    canva.add(a)
    canva.add(b, color='skyblue', style='--', show_breakpoints=False, label='m_3 on B_4')
    assert len(canva) == 2
    assert canva[1] is b

    canva.save(str(tmp_path / "tables.png"))
    assert os.path.getsize(tmp_path / "tables.png") > 0

    canva.remove(a)
    assert len(canva) == 1

    with pytest.warns(UserWarning):
        canva.remove(a)

    with pytest.raises(IndexError):
        canva[3]

def test_canvas_2(tmp_path):
    canva = Canvas(theme='gruvbox', window_size=(5, 3), draw_grid=False)
    traj = compress_to_fixpoint(RankDistribution.from_levels(BooleanLattice(3), (0, 3)), 2)

    canva.add(traj)
    canva.save(str(tmp_path / "trajectory.png"))
    assert os.path.exists(tmp_path / "trajectory.png")

def test_canvas_3(tmp_path):
    plot(mk_table(BooleanLattice(3), 2), str(tmp_path / "m2.svg"), theme='solarized')
    assert os.path.exists(tmp_path / "m2.svg")

    with pytest.raises(ValueError):
        Canvas(theme='neon')

    with pytest.raises(ValueError):
        Canvas().add([0, 1, 2])


if __name__ == "__main__":
    import pathlib, tempfile

    with tempfile.TemporaryDirectory() as d:
        test_canvas_1(pathlib.Path(d))
        test_canvas_2(pathlib.Path(d))
        test_canvas_3(pathlib.Path(d))
