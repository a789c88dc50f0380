"""Regenerates data/graphs/*.graph from networkx planar embeddings (clockwise rotations)."""
import networkx as nx
import numpy as np
import pathlib
from scipy.spatial import Delaunay

out = pathlib.Path(__file__).resolve().parent.parent / "data" / "graphs"
out.mkdir(parents=True, exist_ok=True)

def wheel(k):
    return nx.wheel_graph(k + 1)

def prism(k):
    return nx.circular_ladder_graph(k)

graphs = {
    "k4": nx.complete_graph(4),
    "cube": nx.hypercube_graph(3),
    "wheel5": wheel(5),
    "dodecahedron": nx.dodecahedral_graph(),
    "prism5": prism(5),
    "octahedron": nx.octahedral_graph(),
    "icosahedron": nx.icosahedral_graph(),
}

def sparse_random(seed, points, keep_fraction):
    """Delaunay triangulation of random points, thinned while it stays 3-connected."""
    rng = np.random.default_rng(seed)
    pts = rng.random((points, 2))
    g = nx.Graph()
    for simplex in Delaunay(pts).simplices:
        for i in range(3):
            g.add_edge(int(simplex[i]), int(simplex[(i + 1) % 3]))
    edges = list(g.edges())
    rng.shuffle(edges)
    target = int(g.number_of_edges() * keep_fraction)
    for e in edges:
        if g.number_of_edges() <= target:
            break
        g.remove_edge(*e)
        if min(d for _, d in g.degree()) < 3 or nx.node_connectivity(g) < 3:
            g.add_edge(*e)
    return g

for k, (points, keep) in enumerate([(12, 0.8), (16, 0.75), (20, 0.7), (24, 0.8)]):
    graphs[f"random_{k}"] = sparse_random(1000 + k, points, keep)

for name, g in graphs.items():
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    ok, emb = nx.check_planarity(g)
    assert ok
    lines = [str(g.number_of_nodes())]
    for v in sorted(g.nodes()):
        lines.append(f"{v}: " + " ".join(str(w) for w in emb.neighbors_cw_order(v)))
    (out / f"{name}.graph").write_text("\n".join(lines) + "\n")
    print(name, g.number_of_nodes(), g.number_of_edges())
