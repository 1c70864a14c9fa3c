"""Schnyder decompositions of d-angulations, their duals, and one-bend
orthogonal grid drawings of 4-regular plane graphs.

Modules:
    planar_map   combinatorial plane maps (darts, rotations, duality)
    orientation  fractional alpha-orientations and their distributive lattice
    schnyder     clockwise corner labellings and Schnyder decompositions
    duality      transport to regular decompositions of the dual
    even         even-degree reductions to half as many forests/trees
    drawing      orthogonal & straight-line grid drawings, compaction, SVG
    sampler      encode/decode bijection, rejection sampler, enumeration
    cli          the ``schnyder-kit`` command-line tool
"""

__version__ = "0.1.0"

__all__ = [
    "planar_map", "orientation", "schnyder", "duality", "even",
    "drawing", "sampler", "cli", "errors",
]
