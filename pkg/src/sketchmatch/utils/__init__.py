"""Periodicity helpers and brute-force oracles."""
