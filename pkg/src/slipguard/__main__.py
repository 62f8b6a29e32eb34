"""Allow running slipguard as a module: python -m slipguard"""

from slipguard.cli import app

app()
