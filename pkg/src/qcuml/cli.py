"""``qcuml`` command line.

Exit codes: 0 success, 1 validation failure (or a round trip that does not
come back equivalent), 2 parse/lowering/XMI errors, 3 I/O errors, 4 usage.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .circuit import circuits_equivalent
from .diagnostics import Diagnostic, QasmError, QcumlError, RenderError, TransformError, XmiError
from .qasm import emit, load
from .serialization import load_xmi, read_xmi, write_plantuml, write_xmi
from .transform import circuit_to_uml, uml_to_circuit
from .uml import validate

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3, 4
SUBCOMMANDS = ("qasm2uml", "uml2qasm", "validate", "roundtrip", "render")


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input: str
    output: str | None = None
    format: str = "text"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcuml", description="Convert between OpenQASM 2.0 and quantum UML activity models.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("input", help="input file, or - for stdin")
    parser.add_argument("-o", "--output", help="output file (default: stdout)")
    parser.add_argument("--format", choices=("text", "json"), default="text", help="diagnostic report format")
    return parser


def _circuit_name(path: str) -> str:
    if path == "-":
        return "circuit"
    stem = re.sub(r"\W", "_", Path(path).stem)
    return stem if re.match(r"[A-Za-z_]", stem) else f"c_{stem}"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _report(diagnostics: list[Diagnostic]) -> str:
    return json.dumps({"diagnostics": [d.as_dict() for d in diagnostics]}, indent=2) + "\n"


def _complain(config: CliConfig, diagnostics: list[Diagnostic]) -> None:
    if config.format == "json":
        sys.stderr.write(_report(diagnostics))
    else:
        for d in diagnostics:
            print(d, file=sys.stderr)


def _is_rule(diag: Diagnostic) -> bool:
    return re.fullmatch(r"R\d+", diag.rule) is not None


def run(config: CliConfig) -> int:
    try:
        text = _read(config.input)
    except OSError as exc:
        print(f"qcuml: cannot read {config.input}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if config.subcommand == "qasm2uml":
            out = write_xmi(circuit_to_uml(load(text, _circuit_name(config.input))))
        elif config.subcommand == "uml2qasm":
            out = emit(uml_to_circuit(read_xmi(text)))
        elif config.subcommand == "render":
            out = write_plantuml(read_xmi(text))
        elif config.subcommand == "validate":
            model, warnings = load_xmi(text)
            diagnostics = validate(model)
            if config.format == "json":
                _write(config.output, _report(warnings + diagnostics))
            else:
                for d in warnings + diagnostics:
                    print(d, file=sys.stderr)
                _write(config.output, f"{len(diagnostics)} diagnostic(s)\n")
            return EXIT_INVALID if any(d.is_error for d in diagnostics) else EXIT_OK
        else:
            original = load(text, _circuit_name(config.input))
            model = read_xmi(write_xmi(circuit_to_uml(original)))
            regenerated = emit(uml_to_circuit(model))
            back = load(regenerated, original.name)
            if not circuits_equivalent(original, back):
                print("qcuml: round trip changed the circuit", file=sys.stderr)
                return EXIT_INVALID
            out = regenerated
    except (TransformError, RenderError) as exc:
        _complain(config, exc.diagnostics)
        return EXIT_INVALID if any(_is_rule(d) for d in exc.diagnostics) else EXIT_PARSE
    except (QasmError, XmiError, QcumlError) as exc:
        _complain(config, exc.diagnostics)
        return EXIT_PARSE
    try:
        _write(config.output, out)
    except OSError as exc:
        print(f"qcuml: cannot write {config.output}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"qcuml: {exc}", file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.input != "-" and not Path(args.input).exists():
        print(f"qcuml: no such file: {args.input}", file=sys.stderr)
        return EXIT_IO
    return run(CliConfig(args.subcommand, args.input, args.output, args.format))


if __name__ == "__main__":
    sys.exit(main())
