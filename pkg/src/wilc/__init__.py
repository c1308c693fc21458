"""Exact calculus of gauge and reparametrization covariants of monic
Ore differential operators.

The package computes, over exact coefficient rings (rational functions,
matrices of them, the quasimodular ring Q[E2,E4,E6], and a genus-2
Siegel polynomial model):

* the covariants I_2..I_n of a binomially normalized operator, both by
  triangular Miura extraction and by the closed covariant-Bell formula;
* the u*-action on coefficient tuples that shifts a_1 while fixing all
  I_k;
* the projective currents W_2..W_6 and their reparametrization laws in
  the sigma-formalism, with Schwarzian cocycles and vacuum anomalies;
* Serre derivatives, noncommutative Rankin-Cohen brackets and
  Maurer-Cartan connections over the quasimodular ring;
* the genus-2 covariant raising operator, ordered determinants and
  determinant brackets, verified through one-gamma identities.

Everything is immutable and pure; all arithmetic is exact over Q.
"""

from .invariants import (
    BinomialOperator,
    closed_Ik,
    covariant_jet,
    ek_projective,
    hilbert_constant_invariants,
    miura_extract,
    operator_from_solutions,
    star_action,
    to_binomial,
    trace_invariants,
    w_currents,
)
from .ore import GaugeParam, OreOperator, bell_P, bell_Q, delta, gauge_conjugate, normal_order_power, ore_apply, ore_mul
from .reparam import ReparamJet, overlap_transform, pullback_operator, reparam_Ik, sigma_bell, vacuum_cocycle, verify_w_tensoriality
from .rings import Mat, MFrac, MPoly, Poly, QMRat, QSeries, QuasiModular, RatFunc

__version__ = "0.1.0"

__all__ = [
    "BinomialOperator",
    "GaugeParam",
    "Mat",
    "MFrac",
    "MPoly",
    "OreOperator",
    "Poly",
    "QMRat",
    "QSeries",
    "QuasiModular",
    "RatFunc",
    "ReparamJet",
    "bell_P",
    "bell_Q",
    "closed_Ik",
    "covariant_jet",
    "delta",
    "ek_projective",
    "gauge_conjugate",
    "hilbert_constant_invariants",
    "miura_extract",
    "normal_order_power",
    "operator_from_solutions",
    "ore_apply",
    "ore_mul",
    "overlap_transform",
    "pullback_operator",
    "reparam_Ik",
    "sigma_bell",
    "star_action",
    "to_binomial",
    "trace_invariants",
    "vacuum_cocycle",
    "verify_w_tensoriality",
    "w_currents",
]
