"""Static Louvain on a seven-vertex network, then one incremental update.

Run with ``python demos/louvain_walkthrough.py``.
"""

from streamcomm import DynamicLouvain, DynGraph, EdgeEvent, aggregate, louvain_full, modularity, one_level

EDGES = [(1, 2), (1, 3), (2, 3), (3, 5), (5, 4), (5, 6), (6, 7), (4, 7)]

g = DynGraph()
for u, v in EDGES:
    g.add_edge(u, v)
print(g)

# first pass of local moving, starting from singletons
p, _ = one_level(g)
print("after local moving:", p.communities())

# collapse communities; a loop of weight w stands for 2w internal endpoints
sup, _ = aggregate(g, p)
print("supergraph edges:", list(sup.edges()))

flat, levels = louvain_full(g)
print("final:", flat, "Q =", modularity(g, flat))

# a new edge between the two communities only disbands those two
state = DynamicLouvain(g, flat)
print("affected by (1, 4):", sorted(state.affected_by_addition(1, 4).vertices))
rep = state.step(EdgeEvent.add(1, 4))
print("after step:", state.community_mapping(), "changed:", rep.changed_vertices)
print("upper level:", list(state.ul_graph.edges()))
