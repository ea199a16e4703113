"""Cellplan: digital-twin assembly planning from AutomationML product descriptions."""

__version__ = "0.1.0"
