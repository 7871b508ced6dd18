"""kronload - partition loadings and Kronecker coefficient thresholds."""
