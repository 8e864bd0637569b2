"""OpenQASM 2.0 subset parser and emitter.

Supported statements: the 2.0 header, qelib1 include, qreg/creg declarations,
the gate subset (h x y z s sdg t tdg rz rx ry u1 u2 u3 cx swap ccx), barrier,
measure and reset. Multiple qregs flatten into one index space in declaration
order. Custom gate definitions are rejected.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import GATE_SIGNATURES, Circuit, Gate
from .errors import QasmIndexError, QasmSyntaxError, UnsupportedGateError

_TOKEN_RE = re.compile(
    r"""
    (?P<comment>//[^\n]*)
  | (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"]*")
  | (?P<arrow>->)
  | (?P<punct>[\[\](){},;*/+-])
  | (?P<ws>\s+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class SourceProgram:
    text: str
    origin: str = "inline"


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        value = m.group()
        if kind == "bad":
            raise QasmSyntaxError(f"unexpected character {value!r}", line, col)
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def _here(self) -> tuple[int, int]:
        if self.pos < len(self.tokens):
            t = self.tokens[self.pos]
            return t.line, t.col
        if self.tokens:
            t = self.tokens[-1]
            return t.line, t.col + len(t.value)
        return 1, 1

    def error(self, msg: str):
        line, col = self._here()
        raise QasmSyntaxError(msg, line, col)

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        t = self.peek()
        if t is None:
            self.error("unexpected end of input")
        self.pos += 1
        return t

    def expect(self, value: str) -> _Token:
        t = self.peek()
        if t is None or t.value != value:
            self.error(f"expected {value!r}" + (f", got {t.value!r}" if t else ""))
        return self.next()

    def expect_kind(self, kind: str) -> _Token:
        t = self.peek()
        if t is None or t.kind != kind:
            self.error(f"expected {kind}" + (f", got {t.value!r}" if t else ""))
        return self.next()

    # angle expression: term (('*'|'/') term)*, term: NUMBER | pi | '-' term
    def parse_angle(self) -> float:
        value = self._angle_term()
        while self.peek() and self.peek().value in ("*", "/"):
            op = self.next().value
            rhs = self._angle_term()
            if op == "*":
                value *= rhs
            else:
                value /= rhs
        return value

    def _angle_term(self) -> float:
        t = self.next()
        if t.value == "-":
            return -self._angle_term()
        if t.value == "+":
            return self._angle_term()
        if t.kind == "number":
            return float(t.value)
        if t.kind == "id" and t.value == "pi":
            return math.pi
        raise QasmSyntaxError(f"expected angle term, got {t.value!r}", t.line, t.col)


def parse_qasm(src: SourceProgram | str) -> Circuit:
    if isinstance(src, str):
        src = SourceProgram(src)
    p = _Parser(_tokenize(src.text))

    p.expect("OPENQASM")
    ver = p.expect_kind("number")
    if ver.value != "2.0":
        raise QasmSyntaxError(f"unsupported OPENQASM version {ver.value}", ver.line, ver.col)
    p.expect(";")

    qregs: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
    cregs: dict[str, tuple[int, int]] = {}
    nq = 0
    nc = 0
    gates: list[Gate] = []
    measures: list[tuple[int, int]] = []

    def resolve(regs, name_tok, allow_whole=True):
        """Returns list of flat indices for reg or reg[i]."""
        name = name_tok.value
        if name not in regs:
            raise QasmSyntaxError(f"unknown register {name!r}", name_tok.line, name_tok.col)
        offset, size = regs[name]
        t = p.peek()
        if t is not None and t.value == "[":
            p.next()
            idx_tok = p.expect_kind("number")
            p.expect("]")
            idx = int(idx_tok.value)
            if idx >= size:
                raise QasmIndexError(
                    f"index {idx} out of range for {name}[{size}] "
                    f"(line {idx_tok.line}, col {idx_tok.col})"
                )
            return [offset + idx]
        if not allow_whole:
            p.error(f"register {name!r} must be indexed here")
        return [offset + i for i in range(size)]

    while p.peek() is not None:
        t = p.next()
        if t.kind != "id" and t.value != "include":
            p.error(f"expected statement, got {t.value!r}")
        name = t.value
        if name == "include":
            fname = p.expect_kind("string")
            if fname.value != '"qelib1.inc"':
                raise QasmSyntaxError(f"unsupported include {fname.value}", fname.line, fname.col)
            p.expect(";")
        elif name in ("qreg", "creg"):
            reg_tok = p.expect_kind("id")
            p.expect("[")
            size = int(p.expect_kind("number").value)
            p.expect("]")
            p.expect(";")
            regs = qregs if name == "qreg" else cregs
            if reg_tok.value in qregs or reg_tok.value in cregs:
                raise QasmSyntaxError(f"duplicate register {reg_tok.value!r}", reg_tok.line, reg_tok.col)
            if name == "qreg":
                regs[reg_tok.value] = (nq, size)
                nq += size
            else:
                regs[reg_tok.value] = (nc, size)
                nc += size
        elif name == "gate":
            raise UnsupportedGateError(
                f"custom gate definitions are not supported (line {t.line})"
            )
        elif name in ("if", "opaque"):
            raise QasmSyntaxError(f"unsupported statement {name!r}", t.line, t.col)
        elif name == "measure":
            q_tok = p.expect_kind("id")
            qs = resolve(qregs, q_tok)
            p.expect("->")
            c_tok = p.expect_kind("id")
            cs = resolve(cregs, c_tok)
            p.expect(";")
            if len(qs) != len(cs):
                raise QasmSyntaxError("measure operand sizes differ", q_tok.line, q_tok.col)
            measures.extend(zip(qs, cs))
        elif name == "barrier":
            qs = resolve(qregs, p.expect_kind("id"))
            while p.peek() and p.peek().value == ",":
                p.next()
                qs.extend(resolve(qregs, p.expect_kind("id")))
            p.expect(";")
            gates.append(Gate("barrier", tuple(qs)))
        elif name == "reset":
            qs = resolve(qregs, p.expect_kind("id"))
            p.expect(";")
            gates.extend(Gate("reset", (q,)) for q in qs)
        else:
            if name not in GATE_SIGNATURES:
                raise UnsupportedGateError(
                    f"gate {name!r} outside supported subset (line {t.line}, col {t.col})"
                )
            nparams, arity = GATE_SIGNATURES[name]
            params: tuple[float, ...] = ()
            if p.peek() and p.peek().value == "(":
                p.next()
                vals = [p.parse_angle()]
                while p.peek() and p.peek().value == ",":
                    p.next()
                    vals.append(p.parse_angle())
                p.expect(")")
                params = tuple(vals)
            if len(params) != nparams:
                raise QasmSyntaxError(
                    f"{name} takes {nparams} parameter(s), got {len(params)}", t.line, t.col
                )
            if arity == 1:
                qs = resolve(qregs, p.expect_kind("id"))
                p.expect(";")
                gates.extend(Gate(name, (q,), params) for q in qs)
            else:
                operands = [resolve(qregs, p.expect_kind("id"), allow_whole=False)[0]]
                for _ in range(arity - 1):
                    p.expect(",")
                    operands.append(resolve(qregs, p.expect_kind("id"), allow_whole=False)[0])
                p.expect(";")
                gates.append(Gate(name, tuple(operands), params))

    if nq == 0:
        raise QasmSyntaxError("no qreg declared", 1, 1)
    return Circuit(nq, tuple(gates), tuple(measures))


def _fmt_angle(a: float) -> str:
    return repr(float(a))  # shortest round-tripping decimal, >= 15 significant digits


def emit_qasm(c: Circuit, origin: str = "emitted") -> SourceProgram:
    """Emit the circuit as OpenQASM 2.0; parse(emit(c)) == c gate-for-gate."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.num_qubits}];"]
    nclbits = c.num_clbits
    if nclbits:
        lines.append(f"creg c[{nclbits}];")
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.params:
            params = ",".join(_fmt_angle(a) for a in g.params)
            lines.append(f"{g.kind}({params}) {args};")
        else:
            lines.append(f"{g.kind} {args};")
    for q, cb in c.measures:
        lines.append(f"measure q[{q}] -> c[{cb}];")
    return SourceProgram("\n".join(lines) + "\n", origin)
