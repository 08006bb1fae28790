"""Asymmetric bandit selection for Monte-Carlo tree search."""
