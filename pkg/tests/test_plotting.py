from clusterbc.plotting import draw_snake_graph, draw_triangulation, vertex_xy
from clusterbc.snake import SnakeGraph


def test_vertex_positions():
    x, y = vertex_xy(2, 8)
    assert abs(x) < 1e-12 and abs(y - 1) < 1e-12


def test_figures_written(tmp_path, fig_matrix, hexagon):
    p = draw_triangulation(fig_matrix.full, tmp_path / "t.png", highlight=[(1, 4)], d=fig_matrix.d, title="T")
    q = draw_triangulation(fig_matrix.tbar, tmp_path / "tbar.png")
    G = SnakeGraph(hexagon, (1, 4))
    r = draw_snake_graph(G, tmp_path / "g.png", G.minimal_matching)
    for f in (p, q, r):
        assert f.read_bytes()[:4] == b"\x89PNG"
