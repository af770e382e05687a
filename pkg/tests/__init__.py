"""Test suite for gasket-spectra."""
