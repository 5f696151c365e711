"""Decomposition of multiple hypergeometric series into multiple polylogarithms
and multiple zeta values, with an independent numeric oracle."""
