"""Exact algebra for gl(m|n) scalar products and Gaudin determinants."""
