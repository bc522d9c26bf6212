"""Closed trails that avoid forbidden turns, found through perfect matchings."""

from pnmatch.gallery import bowtie_paired_graph
from pnmatch.graph import alternating_cycles
from pnmatch.transitions import brute_force_closed_trails, find_compatible_closed_trail, pairs_to_transitions
from pnmatch.translations import pm_line_graph

pg = bowtie_paired_graph()
t = pairs_to_transitions(pg)
print("edges:", list(enumerate(pg.graph.edges)))
print("forbidden pairs:", list(zip(pg.pairs, pg.pivots)))
print("one compatible trail:", find_compatible_closed_trail(pg.graph, t))
for c in brute_force_closed_trails(pg.graph, t):
    print("  trail:", c)
lg = pm_line_graph(pg.graph, t)
cycles = alternating_cycles(lg.graph, lg.matching)
print(f"line graph: {lg.graph.n} vertices, {len(cycles)} alternating cycles of lengths {[len(c.edges) for c in cycles]}")
