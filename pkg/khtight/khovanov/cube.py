"""
This module contains the cube of resolutions of a link diagram.
"""
from dataclasses import dataclass
from typing import Iterator, Optional
import logging

from ..braid_link import LinkDiagram, Resolution, trace_resolution
from ..config import EngineLimits, resolve_limits
from ..errors import ResourceLimitError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeVertex():
    """
    A vertex of the cube of resolutions -- i.e. a complete resolution of the diagram.

    Attributes
    ----------
    state : `int`
        Bitmask of smoothings; bit k refers to crossing k.
    weight : `int`
        Number of 1-smoothings.
    resolution : :class:`~khtight.braid_link.diagram.Resolution`
        Traced circles.
    marked_circle : `int`
        Index of the circle carrying the marked edge.
    """
    state: int
    weight: int
    resolution: Resolution
    marked_circle: int

    @property
    def n_circles(self) -> int:
        return self.resolution.n_circles

    @property
    def axis_linking(self) -> tuple:
        return self.resolution.axis_linking


def check_crossing_cap(d: LinkDiagram, limits: Optional[EngineLimits] = None) -> None:
    """
    Raises a :class:`~khtight.errors.ResourceLimitError` if the diagram has more crossings
    than a full cube build is allowed to handle.
    """
    limits = resolve_limits(limits)
    if d.n_crossings > limits.max_crossings:
        raise ResourceLimitError(f"Diagram has {d.n_crossings} crossings; full cube builds " +
                                 f"are limited to {limits.max_crossings} crossings")


def iter_cube(d: LinkDiagram) -> Iterator[CubeVertex]:
    """
    Lazily enumerates the vertices of the cube of resolutions in the order of their states.
    """
    for state in range(1 << d.n_crossings):
        resolution = trace_resolution(d, state)
        yield CubeVertex(state, bin(state).count("1"), resolution,
                         resolution.circle_of_edge[d.marked_edge])


def build_cube(d: LinkDiagram, limits: Optional[EngineLimits] = None) -> list[CubeVertex]:
    """
    Builds all 2^n vertices of the cube of resolutions of a diagram.

    Parameters
    ----------
    d : :class:`~khtight.braid_link.diagram.LinkDiagram`
        Diagram.
    limits : :class:`~khtight.config.EngineLimits`, optional
        Resource limits. If None, the limits are read from the environment.

        The default is None.

    Returns
    -------
    `list[` :class:`~khtight.khovanov.cube.CubeVertex` `]`
        Vertices, indexed by state.
    """
    check_crossing_cap(d, limits)
    vertices = list(iter_cube(d))
    logger.debug("built cube with %d vertices", len(vertices))
    return vertices


__all__ = ["CubeVertex", "check_crossing_cap", "iter_cube", "build_cube"]
