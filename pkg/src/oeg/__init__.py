"""Executable combinatorics of boundary-path dynamics on finite directed
graphs: censuses and cylinder calculus, orbit-equivalence witnesses, the
shift groupoid with its germ/winding shadow, graph moves, and decision
procedures at desk scale."""

__version__ = "0.1.0"
