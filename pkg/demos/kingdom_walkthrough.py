"""Sequentialize a small net, list every derivation and show the kingdom
ordering next to the stem relation of its graphification."""

from pnmatch import graphification, kingdom_order, mix_sequentialize
from pnmatch.gallery import mixed_pars_net, tensor_par_net
from pnmatch.kingdom import dependency_relation, successor_relation
from pnmatch.matching import stem_relation
from pnmatch.sequentialization import enumerate_sequentializations, pretty


def show(name, ps):
    print(f"== {name}")
    print(pretty(mix_sequentialize(ps)))
    print(f"derivations: {len(enumerate_sequentializations(ps))}")
    order = kingdom_order(ps)
    print(f"kingdom (covering pairs): {order.hasse()}")
    print(f"greatest link: {order.greatest()}")
    mg = graphification(ps)
    stems = sorted((mg.provenance[e], mg.provenance[f]) for e, f in stem_relation(mg.graph, mg.matching))
    print(f"stems:        {stems}")
    print(f"dependencies: {sorted(dependency_relation(ps))}")
    print(f"successors:   {sorted(successor_relation(ps))}")
    print()


if __name__ == "__main__":
    show("tensor under two pars", tensor_par_net())
    show("two pars over a tensor, mixed", mixed_pars_net())
