"""Packaged default stop words and demo lexicon."""
