"""Decide the quantifier-alternation level of two-variable first-order logic
for regular languages of finite and infinite words."""

from .classifier import Classification, classify, synthesize_sigma21_formula
from .languages import RecognizedLanguage, combine_infty, syntactic_quotient
from .monoid import OrderedMonoid, validate
from .varieties import min_level

__all__ = ["Classification", "OrderedMonoid", "RecognizedLanguage", "classify", "combine_infty",
           "min_level", "synthesize_sigma21_formula", "syntactic_quotient", "validate"]
