"""Quantum matrix ball representations on truncated Fock spaces."""
