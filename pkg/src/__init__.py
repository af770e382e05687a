"""gasket-spectra - Dirichlet and Neumann spectra of the Laplacian on the gasket minus its bottom edge."""

__version__ = "0.1.0"
