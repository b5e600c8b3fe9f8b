"""
This module contains the text dump format of chain complexes:

    g <id> i=<int> q=<int> a=<int>
    d <from-id> -> <id>[,<id>...]

Blank lines and lines starting with '#' are ignored.
"""
import re

from .complex import CubeComplex


_GENERATOR = re.compile(r"^g\s+(\S+)((?:\s+[A-Za-z]+=-?\d+)*)\s*$")
_FIELD = re.compile(r"([A-Za-z]+)=(-?\d+)")
_ARROW = re.compile(r"^d\s+(\S+)\s*->\s*(\S*)\s*$")


def dump_complex(c: CubeComplex) -> str:
    """
    Returns the text dump of a complex.

    Parameters
    ----------
    c : :class:`~khtight.khovanov.complex.CubeComplex`
        Complex.

    Returns
    -------
    `str`
        Dump, one record per line.
    """
    lines = [f"# {c}"]
    for k, g in enumerate(c.generators):
        lines.append(f"g {k} i={g.i} q={g.q} a={g.a}")
    for k, targets in enumerate(c.differential):
        if len(targets) > 0:
            lines.append(f"d {k} -> " + ",".join(str(t) for t in targets))
    return "\n".join(lines) + "\n"


def parse_dump_records(text: str) -> tuple[dict, dict]:
    """
    Parses the records of a dump.

    Parameters
    ----------
    text : `str`
        Dump.

    Returns
    -------
    `tuple[dict, dict]`
        Generators (name -> grading fields, in file order) and arrows
        (name -> list of target names).
    """
    generators = {}
    arrows = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line == "" or line.startswith("#"):
            continue
        match = _GENERATOR.match(line)
        if match is not None:
            name = match.group(1)
            if name in generators:
                raise ValueError(f"Line {number}: duplicate generator '{name}'")
            generators[name] = {key: int(value) for key, value in _FIELD.findall(match.group(2))}
            continue
        match = _ARROW.match(line)
        if match is not None:
            targets = [t for t in match.group(2).split(",") if t != ""]
            arrows.setdefault(match.group(1), []).extend(targets)
            continue
        raise ValueError(f"Line {number}: malformed record '{line}'")

    for source, targets in arrows.items():
        for name in [source] + targets:
            if name not in generators:
                raise ValueError(f"Arrow refers to unknown generator '{name}'")
    return generators, arrows


__all__ = ["dump_complex", "parse_dump_records"]
