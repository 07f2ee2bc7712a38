"""Element-connectivity toolkit: reduction, packings, spiders and SS-k greedy."""
from .graph import Color, ColoredMultigraph, Edge, MinorTrace, Vertex

__all__ = ["Color", "ColoredMultigraph", "Edge", "MinorTrace", "Vertex"]
__version__ = "0.1.0"
