"""Multiplicative boolean convolution of probability measures on the unit circle."""
from .convolution import (OperatorPairModel, boolean_word_moment, convolve, convolve_power,
                          operator_model_build, operator_model_moments,
                          product_moments_combinatorial, verify_multiplicativity)
from .gallery import (bso_compose, cyclic_haar, dirac, haar, poisson, singular_example,
                      singular_measure, two_point)
from .levy import (CharacteristicPair, char_pair, is_idempotent, is_infinitely_divisible, log_F,
                   measure_from_char_pair, nth_root, semigroup_measure, winding_number)
from .measure import (AtomicMeasure, CircleMeasure, FiniteCircleMeasure, MomentMeasure,
                      StructuredMeasure, atom_mass_estimate, atomic, density_approx, moments_of,
                      validate)
from .series import TruncatedSeries
from .transform import (BlaschkeF, ConstantF, ExpHerglotzF, HerglotzData, SeriesF, StructuredF,
                        ZeroF, F_from_measure, F_from_psi, cauchy_eval, herglotz_analyze,
                        herglotz_synthesize, moments_from_F, psi_from_F, psi_from_moments,
                        schur_evaluate, schur_parameters)

__version__ = "0.1.0"
