"""Length spectrum of random hyperbolic 3-manifolds glued from ideal octahedra.

Exact generator arithmetic, word-class enumeration, Poisson intensities,
a sampler for the random gluing model, and Monte-Carlo fit diagnostics.
"""
from .errors import ResourceError
from .exactalg import (GaussInt, Letter, LETTERS, Mat2, classify_isometry, format_word,
                       letter_matrix, parse_word, translation_length, word_matrix)
from .hypgeo import j_of_r, plane_distance, plane_through, r_of_j, word_plane_distance
from .intensity import class_intensity, interval_intensity
from .randcomplex import (enumerate_cycles, cycle_word, class_counts, is_simple,
                          is_tangle_free, sample_gluing, sample_simple_gluing)
from .stats import factorial_moments, fit_batch, poisson_fit
from .words import a_transform, canonical, class_of, enumerate_classes, orbit, star

__version__ = "0.1.0"
