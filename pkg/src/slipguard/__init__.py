"""slipguard - Sandwich game analytics and slippage tolerance advice for CPMM pools."""

__version__ = "0.1.0"
