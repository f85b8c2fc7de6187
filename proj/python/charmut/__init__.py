"""Character varieties of mutant 3-manifold groups."""

from ._core import (
    CharmutError,
    Presentation,
    abelian_locus,
    analyze_curve,
    fig8,
    h1,
    load_presentation,
    normalize_word,
    parse_presentation,
    reduce_trace,
    relator_residual,
    trace_oracle,
    version,
)

__version__ = version()

__all__ = [
    "CharmutError",
    "Presentation",
    "abelian_locus",
    "analyze_curve",
    "fig8",
    "h1",
    "load_presentation",
    "normalize_word",
    "parse_presentation",
    "reduce_trace",
    "relator_residual",
    "trace_oracle",
    "version",
]
