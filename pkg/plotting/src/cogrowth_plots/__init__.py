"""Figure rendering for the cogrowth toolkit's CSV outputs.

Reads only the documented file formats (walk histogram CSV + JSON sidecar,
trace CSV, model-curve CSV, gamma CSV) and renders static images; it never
runs walks itself.
"""

__version__ = "0.1.0"

from .plots import plot_beta_sweep, plot_gamma, plot_model_hump, plot_trace

__all__ = ["plot_beta_sweep", "plot_gamma", "plot_model_hump", "plot_trace", "__version__"]
