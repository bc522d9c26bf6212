"""Small named instances used by the tests, the demos and the CLI."""

from __future__ import annotations

from .graph import Graph
from .proofnet import Kind, PairedGraph, ProofStructure

AX, TENSOR, PAR = Kind.AX, Kind.TENSOR, Kind.PAR

# vertex names of square_with_diagonal
W, X, Y, Z = 0, 1, 2, 3


def square_with_diagonal() -> tuple[Graph, frozenset, frozenset]:
    """Square w-x-z-y with diagonal x-y, and its two perfect matchings.

    Edges: 0 = wy, 1 = xz, 2 = wx, 3 = xy, 4 = yz.  Returns the graph, the
    matching {wy, xz} and the matching {wx, yz}.
    """
    g = Graph(4, ((W, Y), (X, Z), (W, X), (X, Y), (Y, Z)))
    return g, frozenset({0, 1}), frozenset({2, 4})


def two_triangles_bridge() -> tuple[Graph, frozenset]:
    """Two triangles joined by a middle matching edge; unique matching.

    Vertices w, y, t, s, x, z = 0..5; edges 0 = wy, 1 = ts (the middle),
    2 = xz, 3 = wt, 4 = yt, 5 = xs, 6 = zs.
    """
    g = Graph(6, ((0, 1), (2, 3), (4, 5), (0, 2), (1, 2), (4, 3), (5, 3)))
    return g, frozenset({0, 1, 2})


MIDDLE_EDGE = 1


def single_axiom() -> ProofStructure:
    return ProofStructure({0: AX}, ())


def tensor_of_axioms() -> ProofStructure:
    """Two axioms feeding one tensor (link 2)."""
    return ProofStructure({0: AX, 1: AX, 2: TENSOR}, ((0, 2), (1, 2)))


def tensor_par_net() -> ProofStructure:
    """Two axioms, a tensor (2) and a par (3) over both of them, and a par
    (4) over the tensor and the first par.  Correct without mix."""
    return ProofStructure(
        {0: AX, 1: AX, 2: TENSOR, 3: PAR, 4: PAR},
        ((0, 2), (1, 2), (0, 3), (1, 3), (3, 4), (2, 4)),
    )


def mixed_pars_net() -> ProofStructure:
    """Three axioms 0, 1, 2; tensor 3 over axioms 0 and 2; par 4 over
    axioms 1 and 0; par 5 over axioms 1 and 2.  Correct only with mix."""
    return ProofStructure(
        {0: AX, 1: AX, 2: AX, 3: TENSOR, 4: PAR, 5: PAR},
        ((1, 4), (1, 5), (0, 4), (0, 3), (2, 3), (2, 5)),
    )


MIXED_TENSOR, MIXED_LEFT_PAR, MIXED_RIGHT_PAR = 3, 4, 5


def par_of_axiom() -> ProofStructure:
    """Both outputs of one axiom into one par."""
    return ProofStructure({0: AX, 1: PAR}, ((0, 1), (0, 1)))


def tensor_of_axiom() -> ProofStructure:
    """Both outputs of one axiom into one tensor (incorrect)."""
    return ProofStructure({0: AX, 1: TENSOR}, ((0, 1), (0, 1)))


def bowtie_paired_graph() -> PairedGraph:
    """Bow tie through a centre o with a pair on each wing.

    Vertices w, x, y, z, o = 0..4; edges 0 = xz, 1 = wy, 2 = xo, 3 = zo,
    4 = wo, 5 = yo; pairs (xo, zo) and (wo, yo), both at o.
    """
    g = Graph(5, ((1, 3), (0, 2), (1, 4), (3, 4), (0, 4), (2, 4)))
    return PairedGraph(g, ((2, 3), (4, 5)), (4, 4))


def triangle() -> Graph:
    return Graph(3, ((0, 1), (1, 2), (2, 0)))
