# aglmobius package

"""Exact Möbius functions for the subgroup lattice of AGL(1, F_q)."""

__all__ = [
    "gf",
    "submodules",
    "subgroups",
    "lattice",
    "agl_mobius",
    "designs",
]
