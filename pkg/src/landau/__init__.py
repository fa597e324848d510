"""Spectral toolkit for the two-dimensional sharp-interface model of a
cubic ferromagnet with magnetostriction: pattern generators for zig-zag
Landau states and their competitors, the four-term energy with two
independent elastic solvers, gradient descent on the diffuse relaxation,
and the mu-sweep protocol behind the mu^(2/3) scaling measurement."""

__version__ = "0.1.0"
