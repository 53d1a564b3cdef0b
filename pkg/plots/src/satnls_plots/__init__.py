from .data import (
    envelope,
    load_fit,
    load_norm_table,
    load_report,
    load_separation,
    load_series,
)
from .errors import InconsistentInput, MissingInput, PlotsError, SchemaError
from .figures import (
    FIGURE_KINDS,
    bound_overlay,
    decay_linear,
    decay_log,
    render,
    save_figure,
    separation_map,
    yn_convergence,
)

__version__ = "0.1.0"
