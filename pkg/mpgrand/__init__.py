"""Massive parallel GRAND decoding for 5G polar codes over M-QAM."""
