"""Fictitious film thickness from a screened vector Poisson problem."""
import logging

logging.getLogger(__name__).addHandler(logging.NullHandler())
