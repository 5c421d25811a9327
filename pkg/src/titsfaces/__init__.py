"""Faces of Tits cones, imaginary cones and invariant subcones of linear Coxeter systems."""
