"""Bundled exact block presentations used by the homological oracle.

Each ``*.block`` file describes a finite-dimensional quiver algebra with
relations, a partial order on its vertex labels, and explicit matrices for
the simple, standard, costandard, tilting, projective and injective module
over each label.  See ``tiltc.mincpx.block`` for the format.
"""
