"""
This module contains the configuration of the computational limits.
"""
import os
from dataclasses import dataclass


ENV_GENERATOR_BUDGET = "KHTIGHT_GENERATOR_BUDGET"
ENV_MAX_CROSSINGS = "KHTIGHT_MAX_CROSSINGS"
ENV_CHECK_D_SQUARED = "KHTIGHT_CHECK_D_SQUARED"
ENV_SCAN_ABOVE = "KHTIGHT_SCAN_ABOVE"


def _read_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return default
    try:
        result = int(value)
    except ValueError as ex:
        raise ValueError(f"Environment variable '{name}' must be an integer " +
                         f"but not '{value}'") from ex
    if result <= 0:
        raise ValueError(f"Environment variable '{name}' must be positive")
    return result


@dataclass(frozen=True)
class EngineLimits():
    """
    Limits and switches of the Khovanov engine.

    Parameters
    ----------
    max_crossings : `int`, optional
        Hard cap on the number of crossings of a diagram whose full resolution cube is built.

        The default is 20.
    generator_budget : `int`, optional
        Maximum number of chain generators (labelled resolutions) a build may allocate.

        The default is 2**27.
    check_d_squared : `bool`, optional
        If True, every built complex is checked for d∘d = 0.

        The default is False.
    homology_leaf_cap : `int`, optional
        Maximum number of crossings of a diagram that is recognized by its Khovanov
        homology when verifying quasi-alternating certificates.

        The default is 14.
    scan_above : `int`, optional
        Diagrams with more crossings are computed tangle-wise (crossing by crossing, with
        cancellation after every crossing) instead of through the full resolution cube. The
        same holds for diagrams above `max_crossings`.

        The default is 12.
    """
    max_crossings: int = 20
    generator_budget: int = 2**27
    check_d_squared: bool = False
    homology_leaf_cap: int = 14
    scan_above: int = 12

    def __post_init__(self):
        for name in ("max_crossings", "generator_budget", "homology_leaf_cap", "scan_above"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"'{name}' must be an instance of 'int' " +
                                f"but not of '{type(value)}'")
            if value <= 0:
                raise ValueError(f"'{name}' must be positive")
        if not isinstance(self.check_d_squared, bool):
            raise TypeError("'check_d_squared' must be an instance of 'bool' " +
                            f"but not of '{type(self.check_d_squared)}'")

    def use_scanning(self, n_crossings: int) -> bool:
        """
        Returns True if a diagram with `n_crossings` crossings is computed tangle-wise.
        """
        return n_crossings > min(self.scan_above, self.max_crossings)

    @staticmethod
    def from_env() -> "EngineLimits":
        """
        Creates the limits from the environment variables `KHTIGHT_GENERATOR_BUDGET`,
        `KHTIGHT_MAX_CROSSINGS`, `KHTIGHT_SCAN_ABOVE` and `KHTIGHT_CHECK_D_SQUARED`.

        Returns
        -------
        :class:`~khtight.config.EngineLimits`
            Limits.
        """
        defaults = EngineLimits()
        check = os.environ.get(ENV_CHECK_D_SQUARED, "").strip().lower() in ("1", "true", "yes")
        return EngineLimits(max_crossings=_read_int(ENV_MAX_CROSSINGS, defaults.max_crossings),
                            generator_budget=_read_int(ENV_GENERATOR_BUDGET,
                                                       defaults.generator_budget),
                            scan_above=_read_int(ENV_SCAN_ABOVE, defaults.scan_above),
                            check_d_squared=check)


def resolve_limits(limits) -> EngineLimits:
    if limits is None:
        return EngineLimits.from_env()
    if not isinstance(limits, EngineLimits):
        raise TypeError("'limits' must be an instance of 'EngineLimits' " +
                        f"but not of '{type(limits)}'")
    return limits


__all__ = ["EngineLimits", "resolve_limits"]
