"""Verification workbench for three-weight p-ary cyclic codes built from two
minimal polynomials, with exact weight distributions, quadratic-form sums and
dual minimum-distance certificates."""

from .analysis import analyze, failures, load_schema
from .codes import (DualCertificate, WeightDistribution, codeword, codeword_entry,
                    dual_min_distance_certify, enumerate_distribution, predicted_distribution,
                    sphere_packing_max_d)
from .cycint import CycInt
from .errors import (BudgetExceeded, DomainError, InternalInconsistency, InvalidParams,
                     NonIntegerSum, OracleMismatch, RegimeError, UnsupportedRegime,
                     WitnessNotFound, WorkbenchError)
from .field_tower import (FieldTower, build_tower, quadratic_character, tower_for,
                          trace_to_prime, trace_to_subfield)
from .params import CodeSpec, Regime, validate
from .poly_ring import PolyGFp, code_polynomials, dual_generator, min_poly
from .quad_forms import (QuadForm, diagonalize, form, gauss_sum, intersection_set_counts,
                         radical_rank, s_sum, symmetric_matrix, t_sum, value_distribution)

__version__ = "0.1.0"
