"""Flip distance machinery for convex polygon triangulations.

Modules:
    triangulation   polygon triangulations, flips, enumeration, .tri format
    trees           binary trees, rotations, the dual-tree bijection
    distance        flip sequences, exact distance, diameter, .seq format
    blowup          spine pairs, blow-ups, conflict graphs
    acyclic         maximum induced acyclic subsets of digraphs
    reduction       Max-2SAT instances and the hardness gadget construction
    bounds          upper/lower bound values, sequence construction, analysis
    cli             command line interface
"""

__version__ = "0.1.0"
