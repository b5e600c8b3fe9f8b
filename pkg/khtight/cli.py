"""
Command-line front end: python -m khtight <command> [options]

Exit codes: 0 on success, 2 on malformed input or a mathematical error, 3 if a resource
limit was hit.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, TextIO
import argparse
import json
import logging
import sys

from . import VERSION
from .braid_link import BraidWord, closure_diagram, family_word, parse_braid
from .classical_invariants import determinant, qa_verify, signature
from .config import EngineLimits
from .errors import KhTightError, ResourceLimitError
from .filtered import cancel_reduce, pages, parse_bifiltered, random_bifiltered
from .homology_engine import HomologyTable, closure_complex, homology
from .khovanov import Flavor, Reduction
from .lattice import E125_PLUMBING, E141_PLUMBING, GramLattice, enumerate_embeddings, \
    orthogonal_complement, parity_obstruction
from .surgery import SurgeryDiagram, braid_to_surgery, d3
from .transverse_verdict import VerdictReport, psi_test, s_invariant, tightness_verdict


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_RESOURCE = 3

BRAID_COMMANDS = ("kh", "psi", "s", "sig", "det", "sl", "verdict", "qa")
COMMANDS = BRAID_COMMANDS + ("d3", "lattice", "ss", "family")
PLUMBINGS = {"e125": E125_PLUMBING, "e141": E141_PLUMBING}


def parse_range(text: str) -> tuple[int, int]:
    """
    Parses an inclusive integer range "lo..hi" (or a single integer).
    """
    try:
        if ".." in text:
            low, high = (int(x) for x in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError as ex:
        raise ValueError(f"Malformed range '{text}'") from ex
    if low > high:
        raise ValueError(f"Empty range '{text}'")
    return low, high


@dataclass(frozen=True)
class RunConfig():
    """
    Configuration of one run of the command-line interface.

    Attributes
    ----------
    command : `str`
        Subcommand.
    braid : `str`, optional
        Braid word (comma- or whitespace-separated letters).
    strands : `int`, optional
        Braid index; inferred from the letters if None.
    reduced : `bool`
        Use reduced Khovanov homology.
    json : `bool`
        Emit JSON instead of text.
    template : `str`, optional
        Family template, e.g. "-1*{r},2,1,1,1,2".
    r_range : `tuple[int, int]`, optional
        Inclusive range of the family parameter.
    witness : `str`
        Witness strategy of the quasi-alternating verification.
    file : `str`, optional
        Input file (surgery diagram or Gram matrix as JSON, bi-filtered complex as text).
    plumbing : `str`, optional
        Built-in plumbing lattice ("e125" or "e141").
    n : `int`, optional
        Rank of the ambient diagonal lattice.
    k : `int`, optional
        Index bound of the parity obstruction.
    filtration : `str`
        Filtration of the spectral sequence ("I" or "A").
    r_max : `int`
        Last page of the spectral sequence.
    reduce : `bool`
        Cancel (A, I)-preserving arrows before computing pages.
    random_size : `int`, optional
        Size of a random bi-filtered complex used instead of a file.
    seed : `int`, optional
        Seed of the random bi-filtered complex.
    stabilize : `bool`
        Stabilize even-index braids before building relative surgery diagrams.
    relative : `bool`
        Build surgery diagrams relative to the monodromy instead of over one-handles.
    workers : `int`
        Number of worker processes of family sweeps.
    """
    command: str
    braid: Optional[str] = None
    strands: Optional[int] = None
    reduced: bool = True
    json: bool = False
    template: Optional[str] = None
    r_range: Optional[tuple] = None
    witness: str = "leading_block"
    file: Optional[str] = None
    plumbing: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    filtration: str = "I"
    r_max: int = 5
    reduce: bool = False
    random_size: Optional[int] = None
    seed: Optional[int] = None
    stabilize: bool = True
    relative: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command '{self.command}'")
        if self.command in BRAID_COMMANDS and self.braid is None:
            raise ValueError(f"Command '{self.command}' needs a braid (-b)")
        if self.command == "family":
            if self.template is None or self.r_range is None:
                raise ValueError("Command 'family' needs --template and --r")
            if self.r_range[0] > self.r_range[1]:
                raise ValueError("The family range is empty")
        if self.command == "d3" and self.braid is None and self.file is None:
            raise ValueError("Command 'd3' needs a braid (-b) or a diagram file (--file)")
        if self.command == "lattice" and self.file is None and self.plumbing is None:
            raise ValueError("Command 'lattice' needs --plumbing or a Gram matrix file (--file)")
        if self.command == "ss" and self.file is None and self.random_size is None:
            raise ValueError("Command 'ss' needs --file or --random")
        if self.workers < 1:
            raise ValueError("'workers' must be positive")

    def braid_word(self) -> BraidWord:
        return parse_braid(self.braid, self.strands)


def _emit(out: TextIO, config: RunConfig, data: dict, text: str) -> None:
    if config.json:
        out.write(json.dumps(data, indent=2, default=str) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def format_table(table: HomologyTable) -> str:
    """
    Formats a homology table with one row per diagonal q - 2i.
    """
    rows = []
    for delta in sorted(table.diagonals()):
        cells = []
        for (i, q), v in sorted(table.dims.items()):
            if q - 2 * i == delta:
                cells.append(f"({i},{q})" + (f"^{v}" if v > 1 else ""))
        rows.append(f"q-2i = {delta:>3}: " + " ".join(cells))
    rows.append(f"total rank: {table.total_rank}")
    return "\n".join(rows)


def format_report(report: VerdictReport) -> str:
    def show(value) -> str:
        return "-" if value is None else str(value)

    return (f"{report.braid:<32} sl={report.sl:>3} s={show(report.s):>3} " +
            f"sigma={show(report.sigma):>3} det={show(report.det):>4} " +
            f"rank={show(report.kh_rank):>4} thin={show(report.thin):<5} " +
            f"collapse={str(report.collapse):<5} psi={show(report.psi_nonzero):<5} " +
            f"{report.verdict.value}")


def _family_member(template: str, r: int) -> dict:
    report = tightness_verdict(family_word(template, r))
    return {"r": r, **report.to_dict()}


def _run_braid(config: RunConfig, out: TextIO) -> None:
    w = config.braid_word()
    command = config.command
    if command == "kh":
        reduction = Reduction.REDUCED if config.reduced else Reduction.UNREDUCED
        table = homology(closure_complex(w, Flavor.KHOVANOV_F2, reduction)[0])
        _emit(out, config, {"braid": w.to_text(), "reduced": config.reduced, **table.to_dict()},
              format_table(table))
    elif command == "psi":
        result = psi_test(w)
        witness = None if result.witness is None else sorted(result.witness)
        _emit(out, config, {"braid": w.to_text(), "psi": result.status.value, "i": result.i,
                            "q": result.q, "witness": witness},
              f"psi = {result.status.value} (i = {result.i}, q = {result.q})" +
              ("" if witness is None else f", psi = d({witness})"))
    elif command == "s":
        value = s_invariant(w)
        _emit(out, config, {"braid": w.to_text(), "s": value}, f"s = {value}")
    elif command == "sig":
        value = signature(closure_diagram(w))
        _emit(out, config, {"braid": w.to_text(), "signature": value}, f"signature = {value}")
    elif command == "det":
        value = determinant(closure_diagram(w))
        _emit(out, config, {"braid": w.to_text(), "det": value}, f"det = {value}")
    elif command == "sl":
        value = w.self_linking()
        _emit(out, config, {"braid": w.to_text(), "sl": value}, f"sl = {value}")
    elif command == "verdict":
        report = tightness_verdict(w)
        _emit(out, config, report.to_dict(),
              format_report(report) + "".join(f"\n  note: {n}" for n in report.notes))
    elif command == "qa":
        certificate = qa_verify(w, config.witness)
        lines = [f"quasi-alternating certificate of depth {certificate.depth}"]
        for node in certificate.nodes():
            kind = f"leaf: {node.leaf}" if node.leaf is not None else f"resolve {node.witness}"
            lines.append(f"  {node.label} (det {node.det}, {kind})")
        _emit(out, config, certificate.to_dict(), "\n".join(lines))


def _run_d3(config: RunConfig, out: TextIO) -> None:
    if config.file is not None:
        with open(config.file, encoding="utf-8") as f:
            diagram = SurgeryDiagram.from_dict(json.load(f))
    else:
        diagram = braid_to_surgery(config.braid_word(), config.stabilize, config.relative)
    result = d3(diagram)
    text = (f"{diagram}\n" + f"d3 = {result.d3}, c1^2 = {result.c1_sq}, chi = {result.chi}, " +
            f"sign = {result.sign}, m = {result.m}, |H_1| = {result.h1_order}")
    _emit(out, config, {"diagram": diagram.to_dict(), **result.to_dict()}, text)


def _run_lattice(config: RunConfig, out: TextIO) -> None:
    if config.plumbing is not None:
        if config.plumbing not in PLUMBINGS:
            raise ValueError(f"Unknown plumbing '{config.plumbing}'")
        lattice = PLUMBINGS[config.plumbing]
    else:
        with open(config.file, encoding="utf-8") as f:
            lattice = GramLattice.from_dict(json.load(f))
    n = config.n if config.n is not None else lattice.rank + 1

    embeddings = enumerate_embeddings(lattice, n)
    data = {"n": n, "embeddings": []}
    lines = [f"{len(embeddings)} embedding class(es) into <-1>^{n}"]
    for e in embeddings:
        complement = orthogonal_complement(e)
        entry = {"embedding": e.to_dict(), "complement": complement.to_dict()}
        lines.append("  " + ", ".join(f"{v} -> {x}" for v, x in e.images().items()))
        lines.append(f"  complement: {complement}")
        if config.k is not None and complement.is_diagonal():
            parity = parity_obstruction(complement, config.k)
            entry["parity"] = parity.to_dict()
            lines.append(f"  parity obstruction (k = {config.k}): {parity.status.value}")
        data["embeddings"].append(entry)
    _emit(out, config, data, "\n".join(lines))


def _run_ss(config: RunConfig, out: TextIO) -> None:
    if config.file is not None:
        with open(config.file, encoding="utf-8") as f:
            c = parse_bifiltered(f.read())
    else:
        c = random_bifiltered(config.seed, config.random_size)
    if config.reduce:
        c = cancel_reduce(c)
    sequence = pages(c, config.filtration, config.r_max)

    other = sequence.filtration.other.value
    lines = [str(c)]
    for page in sequence.pages:
        classes = ", ".join(f"[{'+'.join(x.representative)}]@{sequence.filtration.value}=" +
                            f"{x.degree},{other}={x.level}" for x in page.classes)
        lines.append(f"E{page.r}: dim {page.dimension}, rank d{page.r} = {page.rank}: {classes}")
    lines.append(f"H: rank {sequence.homology.rank}, induced {other}-levels " +
                 f"{list(sequence.homology.levels)}")
    _emit(out, config, sequence.to_dict(), "\n".join(lines))


def _run_family(config: RunConfig, out: TextIO) -> None:
    low, high = config.r_range
    values = list(range(low, high + 1))
    templates = [config.template] * len(values)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            rows = list(executor.map(_family_member, templates, values))
    else:
        rows = [_family_member(t, r) for t, r in zip(templates, values)]

    lines = []
    for row in rows:
        report = VerdictReport.from_dict({k: v for k, v in row.items() if k != "r"})
        lines.append(f"r={row['r']:<3} " + format_report(report))
    _emit(out, config, {"template": config.template, "reports": rows}, "\n".join(lines))


def run(config: RunConfig, out: Optional[TextIO] = None) -> int:
    """
    Runs one command.

    Parameters
    ----------
    config : :class:`~khtight.cli.RunConfig`
        Configuration.
    out : `TextIO`, optional
        Output stream. If None, the standard output is used.

        The default is None.

    Returns
    -------
    `int`
        Exit code.
    """
    out = sys.stdout if out is None else out
    try:
        EngineLimits.from_env()
        if config.command in BRAID_COMMANDS:
            _run_braid(config, out)
        elif config.command == "d3":
            _run_d3(config, out)
        elif config.command == "lattice":
            _run_lattice(config, out)
        elif config.command == "ss":
            _run_ss(config, out)
        else:
            _run_family(config, out)
    except ResourceLimitError as ex:
        print(f"Error: {ex}", file=sys.stderr)
        return EXIT_RESOURCE
    except (KhTightError, ValueError, OSError) as ex:
        print(f"Error: {ex}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON")
    common.add_argument("--verbose", "-v", action="store_true", help="INFO-level logging")
    common.add_argument("--debug", action="store_true", help="DEBUG-level logging")

    braid = argparse.ArgumentParser(add_help=False)
    braid.add_argument("-b", "--braid", type=str, help="Braid word, e.g. \"-1,-1,2,1,1,1,2\"")
    braid.add_argument("--strands", type=int, default=None, help="Braid index")

    parser = argparse.ArgumentParser(prog="khtight",
                                     description="Tightness certificates for branched double " +
                                     "covers of transverse braid closures")
    parser.add_argument("--version", action="version", version=VERSION)
    commands = parser.add_subparsers(dest="command", required=True)

    kh = commands.add_parser("kh", parents=[common, braid], help="Khovanov homology table")
    kh.add_argument("--unreduced", action="store_true", help="Unreduced homology")
    commands.add_parser("psi", parents=[common, braid], help="Nonvanishing of psi")
    commands.add_parser("s", parents=[common, braid], help="s-invariant")
    commands.add_parser("sig", parents=[common, braid], help="Signature")
    commands.add_parser("det", parents=[common, braid], help="Determinant")
    commands.add_parser("sl", parents=[common, braid], help="Self-linking number")
    commands.add_parser("verdict", parents=[common, braid], help="Tightness verdict")
    qa = commands.add_parser("qa", parents=[common, braid], help="Quasi-alternating certificate")
    qa.add_argument("--witness", type=str, default="leading_block",
                    help="Witness strategy (leading_block or last_negative)")

    surgery = commands.add_parser("d3", parents=[common, braid], help="d3 invariant")
    surgery.add_argument("--file", type=str, default=None, help="Surgery diagram (JSON)")
    surgery.add_argument("--no-stabilize", action="store_true",
                         help="Reject braids of even index instead of stabilizing them")
    surgery.add_argument("--relative", action="store_true",
                         help="Lift the monodromy factorization instead of every letter")

    lattice = commands.add_parser("lattice", parents=[common],
                                  help="Lattice embeddings and parity obstruction")
    lattice.add_argument("--file", type=str, default=None, help="Gram matrix (JSON)")
    lattice.add_argument("--plumbing", type=str, default=None, choices=sorted(PLUMBINGS),
                         help="Built-in plumbing lattice")
    lattice.add_argument("--n", type=int, default=None, help="Rank of <-1>^n")
    lattice.add_argument("--k", type=int, default=None, help="Index bound |H_1|")

    ss = commands.add_parser("ss", parents=[common], help="Spectral sequence pages")
    ss.add_argument("--file", type=str, default=None, help="Bi-filtered complex (text)")
    ss.add_argument("--filtration", type=str, default="I", choices=["I", "A"])
    ss.add_argument("--r-max", type=int, default=5, help="Last page")
    ss.add_argument("--reduce", action="store_true", help="Cancel (A, I)-preserving arrows")
    ss.add_argument("--random", type=int, default=None, help="Size of a random complex")
    ss.add_argument("--seed", type=int, default=None, help="Seed of the random complex")

    family = commands.add_parser("family", parents=[common], help="Verdicts of a braid family")
    family.add_argument("--template", type=str, required=True,
                        help="Template with {r}, e.g. \"-1*{r},2,1,1,1,2\"")
    family.add_argument("--r", type=str, required=True, help="Range lo..hi")
    family.add_argument("--workers", type=int, default=1, help="Worker processes")

    return parser


def main(argv: Optional[list[str]] = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = RunConfig(command=args.command,
                           braid=getattr(args, "braid", None),
                           strands=getattr(args, "strands", None),
                           reduced=not getattr(args, "unreduced", False),
                           json=args.json,
                           template=getattr(args, "template", None),
                           r_range=parse_range(args.r) if args.command == "family" else None,
                           witness=getattr(args, "witness", "leading_block"),
                           file=getattr(args, "file", None),
                           plumbing=getattr(args, "plumbing", None),
                           n=getattr(args, "n", None),
                           k=getattr(args, "k", None),
                           filtration=getattr(args, "filtration", "I"),
                           r_max=getattr(args, "r_max", 5),
                           reduce=getattr(args, "reduce", False),
                           random_size=getattr(args, "random", None),
                           seed=getattr(args, "seed", None),
                           stabilize=not getattr(args, "no_stabilize", False),
                           relative=getattr(args, "relative", False),
                           workers=getattr(args, "workers", 1))
    except ValueError as ex:
        print(f"Error: {ex}", file=sys.stderr)
        sys.exit(EXIT_ERROR)

    sys.exit(run(config))


__all__ = ["RunConfig", "run", "main", "build_parser", "parse_range", "format_table",
           "format_report"]
