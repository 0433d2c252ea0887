"""Isospectral and homophonic plane domains: certificates, maps, spectra."""

__version__ = "0.1.0"
