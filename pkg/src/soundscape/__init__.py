"""Soundscape generation toolkit: scene understanding, sound ideation, and multitrack mixing."""

__version__ = "0.1.0"
