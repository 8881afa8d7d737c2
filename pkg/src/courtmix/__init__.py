"""Volleyball team-mixing Markov chain: exact chains, numerics, Monte Carlo and certificates."""
