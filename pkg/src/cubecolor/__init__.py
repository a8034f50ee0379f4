"""Partitions of binary Hamming spaces into minimum-distance-4 codes
(proper colorings of squared hypercubes): codes, isometries, canonical forms,
clique and cover search, symmetry-prescribed partition search, verification,
double counting and extension."""

__version__ = "0.1.0"
