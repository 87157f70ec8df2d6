"""padicwalk: Ultrametric random walks on Q_p, their spectra and wavelet bases."""

__version__ = "0.1.0"
