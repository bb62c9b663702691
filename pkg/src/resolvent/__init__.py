"""Exact symbolic engine for length-3 free resolutions of cokernels of
generic 2 x n matrices: structure maps, linkage via mapping cones, and
mechanical verification of the structure-map identities.
"""

__version__ = "0.1.0"
