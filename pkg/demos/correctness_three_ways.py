"""Decide correctness of random proof structures three ways and compare.

    python3 demos/correctness_three_ways.py [count] [seed]
"""

import sys

import numpy as np

from pnmatch import dr_check, graphification, is_unique_pm, random_net, rb_graph
from pnmatch.proofnet import Kind
from pnmatch.translations import alternating_to_switching


def main(count: int = 20, seed: int = 0) -> None:
    rng = np.random.default_rng(seed)
    for i in range(count):
        ps = random_net(int(rng.integers(3, 15)), rng, max_pars=8)
        if ps.pars and rng.random() < 0.5:
            # a par turned into a tensor usually closes a switching cycle
            ps = ps.relabel(int(rng.choice(ps.pars)), Kind.TENSOR)
        dr = dr_check(ps).correct
        rb = rb_graph(ps)
        mg = graphification(ps)
        via_rb = is_unique_pm(rb.graph, rb.matching).unique
        res = is_unique_pm(mg.graph, mg.matching)
        line = f"{i:3d}  links={len(ps.links):2d}  dr={dr!s:5}  rb={via_rb!s:5}  graphified={res.unique!s:5}"
        if not res.unique:
            cycle = alternating_to_switching(mg, res.witness)
            line += f"  switching cycle of length {len(cycle.edges)}"
        print(line)


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
