"""Residue-arithmetic verification of harmonic-number congruences, checked
against an exact rational oracle."""

from .cases import FAMILIES, CongruenceCase, CongruenceReport, ParamBounds, parse_selection
from .exact import (
    BernoulliSeq,
    bernoulli_exact,
    binomial,
    faulhaber_sum,
    harmonic_exact,
    identity_binomial_harmonic,
    identity_hockey_stick,
    s_coefficient,
)
from .oracle import oracle_evaluate
from .residues import Modulus, Residue, reduce_rational
from .suite import evaluate_case, run_suite
from .tables import PrimeContext, bernoulli_mod_p, build_context

__version__ = "0.1.0"
