"""OpenQASM 2.0 ingestion and serialization for the supported gate set.

Supports flat, compiled-style programs: one quantum register, the qelib1
gate names covered by the package gate set, ``barrier``, and terminal
``measure``. Custom ``gate`` definitions, ``if`` conditionals, ``reset``,
and OpenQASM 3 are rejected. Classical registers are accepted syntactically
but carry no semantics (the model has no mid-circuit feedback). ``swap``
is expanded to 3 CX at parse time. Barriers are recorded as layer
boundaries across the whole register; they add no time or error.
"""

from __future__ import annotations

import ast
import bisect
import math
import re

from .circuit import Circuit, Gate
from .errors import (
    QasmSyntaxError,
    QubitIndexError,
    UnsupportedFeatureError,
    UnsupportedGateError,
)

# QASM spelling -> canonical kind. Includes the QASM-native U/CX spellings
# and the qelib1 aliases u3 (three-parameter rotation) and cu1 (controlled
# phase).
_QASM_GATE_NAMES: dict[str, str] = {
    "id": "I",
    "x": "X",
    "y": "Y",
    "z": "Z",
    "h": "H",
    "s": "S",
    "sdg": "SDG",
    "t": "T",
    "tdg": "TDG",
    "sx": "SX",
    "sxdg": "SXDG",
    "rx": "RX",
    "ry": "RY",
    "rz": "RZ",
    "u": "U",
    "u3": "U",
    "U": "U",
    "cx": "CX",
    "CX": "CX",
    "cz": "CZ",
    "cp": "CP",
    "cu1": "CP",
    "swap": "SWAP",
}

_KIND_TO_QASM = {
    "I": "id", "X": "x", "Y": "y", "Z": "z", "H": "h", "S": "s", "SDG": "sdg",
    "T": "t", "TDG": "tdg", "SX": "sx", "SXDG": "sxdg", "RX": "rx", "RY": "ry",
    "RZ": "rz", "U": "u", "CX": "cx", "CZ": "cz", "CP": "cp",
}

_NAME_RE = re.compile(r"[A-Za-z_]\w*")
_ARG_RE = re.compile(r"^([A-Za-z_]\w*)\s*(?:\[\s*(\d+)\s*\])?$")

_EXPR_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
    ast.Pow: lambda a, b: a ** b,
}
_EXPR_FUNCS = {
    "sin": math.sin, "cos": math.cos, "tan": math.tan,
    "exp": math.exp, "ln": math.log, "sqrt": math.sqrt,
}


def _eval_angle(expr: str) -> float:
    """Evaluate a QASM angle expression (numbers, pi, + - * / ^, fns)."""
    try:
        tree = ast.parse(expr.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad angle expression {expr!r}") from exc

    def ev(node) -> float:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _EXPR_BINOPS:
            return _EXPR_BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _EXPR_FUNCS and len(node.args) == 1
                and not node.keywords):
            return _EXPR_FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"bad angle expression {expr!r}")

    return ev(tree)


class _Source:
    """QASM text with offset -> (line, column) mapping, comments blanked."""

    def __init__(self, text: str):
        self.text = re.sub(r"//[^\n]*", lambda m: " " * len(m.group()), text)
        self.line_starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.line_starts.append(i + 1)

    def location(self, offset: int) -> tuple[int, int]:
        li = bisect.bisect_right(self.line_starts, offset) - 1
        return li + 1, offset - self.line_starts[li] + 1

    def statements(self):
        """Yield (statement_text, start_offset) split on semicolons."""
        pos = 0
        n = len(self.text)
        while pos < n:
            end = self.text.find(";", pos)
            if end == -1:
                chunk = self.text[pos:]
                if chunk.strip():
                    start = pos + (len(chunk) - len(chunk.lstrip()))
                    line, col = self.location(start)
                    raise QasmSyntaxError(
                        f"statement {chunk.strip()!r} is missing a ';'", line, col
                    )
                break
            chunk = self.text[pos:end]
            stripped = chunk.strip()
            if stripped:
                yield stripped, pos + (len(chunk) - len(chunk.lstrip()))
            pos = end + 1


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_qasm(text: str) -> Circuit:
    """Parse OpenQASM 2.0 text into a :class:`Circuit`.

    Raises :class:`QasmSyntaxError` (with line/column) for malformed input,
    :class:`UnsupportedGateError` for gates outside the supported set, and
    :class:`QubitIndexError` for out-of-range qubit references.
    """
    src = _Source(text)
    reg_name: str | None = None
    reg_size = 0
    gates: list[Gate] = []
    barriers: set[int] = set()
    measured: set[int] = set()

    def err(msg: str, offset: int):
        line, col = src.location(offset)
        return QasmSyntaxError(msg, line, col)

    for stmt, offset in src.statements():
        head = _NAME_RE.match(stmt)
        if head is None:
            raise err(f"cannot parse statement {stmt!r}", offset)
        keyword = head.group()

        if keyword == "OPENQASM":
            version = stmt[head.end():].strip()
            if version != "2.0":
                raise UnsupportedFeatureError(
                    f"only OpenQASM 2.0 is supported, got version {version!r}"
                )
            continue
        if keyword == "include":
            continue
        if keyword in ("gate", "opaque"):
            raise UnsupportedFeatureError(
                "custom gate definitions are not supported; supply flat circuits"
            )
        if keyword == "if":
            raise UnsupportedFeatureError("classical conditionals are not supported")
        if keyword == "reset":
            raise UnsupportedFeatureError("reset is not supported")
        if keyword == "qreg":
            m = re.fullmatch(r"qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]", stmt)
            if m is None:
                raise err(f"malformed qreg declaration {stmt!r}", offset)
            if reg_name is not None:
                raise UnsupportedFeatureError("only a single quantum register is supported")
            reg_name, reg_size = m.group(1), int(m.group(2))
            if reg_size < 1:
                raise err("quantum register must have at least 1 qubit", offset)
            continue
        if keyword == "creg":
            if re.fullmatch(r"creg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]", stmt) is None:
                raise err(f"malformed creg declaration {stmt!r}", offset)
            continue
        if keyword == "barrier":
            rest = stmt[head.end():].strip()
            if rest and reg_name is not None:
                for a in _split_top_level(rest):
                    _resolve_qubits(a, reg_name, reg_size, offset, src)
            barriers.add(len(gates))
            continue

        if reg_name is None:
            raise err("quantum register must be declared before operations", offset)

        if keyword == "measure":
            m = re.fullmatch(r"measure\s+(.+?)\s*->\s*(.+)", stmt, re.DOTALL)
            if m is None:
                raise err(f"malformed measure statement {stmt!r}", offset)
            measured.update(_resolve_qubits(m.group(1).strip(), reg_name, reg_size, offset, src))
            continue

        _parse_gate_application(stmt, offset, src, reg_name, reg_size, gates)

    if reg_name is None:
        raise err("no quantum register declared", 0)
    return Circuit(
        n_qubits=reg_size,
        gates=tuple(gates),
        measured_qubits=frozenset(measured),
        barriers=tuple(sorted(barriers)),
    )


def _resolve_qubits(arg: str, reg_name: str, reg_size: int,
                    offset: int, src: _Source) -> list[int]:
    m = _ARG_RE.match(arg.strip())
    if m is None:
        line, col = src.location(offset)
        raise QasmSyntaxError(f"malformed argument {arg!r}", line, col)
    name, idx = m.group(1), m.group(2)
    if name != reg_name:
        line, col = src.location(offset)
        raise QasmSyntaxError(f"unknown register {name!r}", line, col)
    if idx is None:
        return list(range(reg_size))
    q = int(idx)
    if q >= reg_size:
        raise QubitIndexError(
            f"qubit index {name}[{q}] out of range for register of size {reg_size}"
        )
    return [q]


def _parse_gate_application(stmt: str, offset: int, src: _Source,
                            reg_name: str, reg_size: int, gates: list[Gate]):
    head = _NAME_RE.match(stmt)
    name = head.group()
    rest = stmt[head.end():].strip()

    kind = _QASM_GATE_NAMES.get(name)
    if kind is None:
        line, col = src.location(offset)
        raise UnsupportedGateError(
            f"unsupported gate {name!r} (line {line}, column {col})"
        )

    params: tuple[float, ...] = ()
    if rest.startswith("("):
        depth, close = 0, -1
        for i, ch in enumerate(rest):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    close = i
                    break
        if close == -1:
            line, col = src.location(offset)
            raise QasmSyntaxError(f"unbalanced parentheses in {stmt!r}", line, col)
        inner = rest[1:close]
        try:
            params = tuple(_eval_angle(p) for p in _split_top_level(inner))
        except ValueError as exc:
            line, col = src.location(offset)
            raise QasmSyntaxError(str(exc), line, col) from None
        rest = rest[close + 1:].strip()

    if not rest:
        line, col = src.location(offset)
        raise QasmSyntaxError(f"gate {name!r} is missing qubit arguments", line, col)
    args = [_resolve_qubits(a, reg_name, reg_size, offset, src)
            for a in _split_top_level(rest)]

    if kind == "SWAP":
        if len(args) != 2 or len(args[0]) != 1 or len(args[1]) != 1:
            line, col = src.location(offset)
            raise QasmSyntaxError("swap requires two indexed qubits", line, col)
        a, b = args[0][0], args[1][0]
        gates.append(Gate("CX", (a, b)))
        gates.append(Gate("CX", (b, a)))
        gates.append(Gate("CX", (a, b)))
        return

    from .circuit import GATE_SIGNATURES

    arity, n_params = GATE_SIGNATURES[kind]
    if len(params) != n_params:
        line, col = src.location(offset)
        raise QasmSyntaxError(
            f"gate {name!r} expects {n_params} parameter(s), got {len(params)}", line, col
        )
    if arity == 1:
        if len(args) != 1:
            line, col = src.location(offset)
            raise QasmSyntaxError(f"gate {name!r} expects 1 argument", line, col)
        for q in args[0]:
            gates.append(Gate(kind, (q,), params))
        return
    if len(args) != 2 or len(args[0]) != 1 or len(args[1]) != 1:
        line, col = src.location(offset)
        raise QasmSyntaxError(
            f"two-qubit gate {name!r} requires two indexed qubits", line, col
        )
    gates.append(Gate(kind, (args[0][0], args[1][0]), params))


def emit_qasm(circ: Circuit) -> str:
    """Serialize a circuit back to OpenQASM 2.0.

    Inverse of :func:`parse_qasm` up to formatting: reparsing the output
    reproduces the circuit gate for gate, including barriers and measures.
    """
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circ.n_qubits}];"]
    measured = sorted(circ.measured_qubits)
    if measured:
        lines.append(f"creg c[{len(measured)}];")
    barrier_at = set(circ.barriers)
    for i, g in enumerate(circ.gates):
        if i in barrier_at:
            lines.append("barrier q;")
        name = _KIND_TO_QASM[g.kind]
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.params:
            lines.append(f"{name}({','.join(repr(p) for p in g.params)}) {args};")
        else:
            lines.append(f"{name} {args};")
    if len(circ.gates) in barrier_at:
        lines.append("barrier q;")
    for j, q in enumerate(measured):
        lines.append(f"measure q[{q}] -> c[{j}];")
    return "\n".join(lines) + "\n"
