"""Verification suites, corpora and the command-line interface."""
