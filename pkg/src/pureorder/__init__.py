"""Rings of integers of pure fields Q(a^(1/p)) of odd prime degree."""

__version__ = "0.1.0"
