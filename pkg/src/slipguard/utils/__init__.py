"""Utilities module for slipguard."""
