import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorc.circuit import Circuit, Gate
from qorc.errors import QasmIndexError, QasmSyntaxError, UnsupportedGateError
from qorc.qasm import SourceProgram, emit_qasm, parse_qasm

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def test_parse_minimal_bell():
    c = parse_qasm(HEADER + "qreg q[2]; creg c[2]; h q[0]; cx q[0],q[1]; "
                   "measure q[0] -> c[0]; measure q[1] -> c[1];")
    assert c.num_qubits == 2
    assert [g.kind for g in c.gates] == ["h", "cx"]
    assert c.measures == ((0, 0), (1, 1))


def test_include_is_optional():
    c = parse_qasm("OPENQASM 2.0; qreg q[1]; x q[0];")
    assert c.gates == (Gate("x", (0,)),)


def test_multiple_qregs_flatten_in_declaration_order():
    c = parse_qasm("OPENQASM 2.0; qreg a[2]; qreg b[3]; cx a[1],b[0];")
    assert c.num_qubits == 5
    assert c.gates[0].qubits == (1, 2)


def test_single_qubit_register_broadcast():
    c = parse_qasm("OPENQASM 2.0; qreg q[3]; h q;")
    assert [g.qubits for g in c.gates] == [(0,), (1,), (2,)]


def test_measure_register_broadcast():
    c = parse_qasm("OPENQASM 2.0; qreg q[2]; creg c[2]; measure q -> c;")
    assert c.measures == ((0, 0), (1, 1))


def test_angle_expressions():
    c = parse_qasm("OPENQASM 2.0; qreg q[1]; rz(pi/2) q[0]; rz(-pi) q[0]; "
                   "u3(2*pi,0.5,-pi/4) q[0]; rz(3) q[0];")
    assert c.gates[0].params[0] == pytest.approx(math.pi / 2)
    assert c.gates[1].params[0] == pytest.approx(-math.pi)
    assert c.gates[2].params == pytest.approx((2 * math.pi, 0.5, -math.pi / 4))
    assert c.gates[3].params[0] == 3.0


def test_barrier_and_reset():
    c = parse_qasm("OPENQASM 2.0; qreg q[2]; barrier q; reset q[1];")
    assert c.gates[0].kind == "barrier" and c.gates[0].qubits == (0, 1)
    assert c.gates[1] == Gate("reset", (1,))


def test_syntax_error_has_position():
    with pytest.raises(QasmSyntaxError) as e:
        parse_qasm("OPENQASM 2.0;\nqreg q[1];\nh q[0]")
    assert e.value.line >= 3


def test_bad_version_rejected():
    with pytest.raises(QasmSyntaxError):
        parse_qasm("OPENQASM 3.0; qreg q[1];")


def test_out_of_range_index():
    with pytest.raises(QasmIndexError):
        parse_qasm("OPENQASM 2.0; qreg q[2]; h q[5];")
    with pytest.raises(IndexError):
        parse_qasm("OPENQASM 2.0; qreg q[2]; h q[5];")


def test_unknown_gate_and_gate_defs_rejected():
    with pytest.raises(UnsupportedGateError):
        parse_qasm("OPENQASM 2.0; qreg q[1]; frobnicate q[0];")
    with pytest.raises(UnsupportedGateError):
        parse_qasm("OPENQASM 2.0; qreg q[2]; gate foo a, b { cx a, b; } foo q[0], q[1];")


def test_if_statement_rejected():
    with pytest.raises(QasmSyntaxError):
        parse_qasm("OPENQASM 2.0; qreg q[1]; creg c[1]; if (c==1) x q[0];")


def test_multi_qubit_gates_need_indexed_operands():
    with pytest.raises(QasmSyntaxError):
        parse_qasm("OPENQASM 2.0; qreg q[2]; cx q, q;")


def test_wrong_param_count():
    with pytest.raises(QasmSyntaxError):
        parse_qasm("OPENQASM 2.0; qreg q[1]; rz q[0];")
    with pytest.raises(QasmSyntaxError):
        parse_qasm("OPENQASM 2.0; qreg q[1]; h(0.5) q[0];")


def test_comments_ignored():
    c = parse_qasm("OPENQASM 2.0; // header\nqreg q[1]; // a register\nx q[0];")
    assert c.gates == (Gate("x", (0,)),)


def test_emit_round_trip_exact():
    src = (HEADER + "qreg q[3];\ncreg c[2];\nh q[0];\nrz(0.7853981633974483) q[1];\n"
           "ccx q[0],q[1],q[2];\nswap q[0],q[2];\nmeasure q[0] -> c[0];\n"
           "measure q[2] -> c[1];\n")
    c = parse_qasm(src)
    again = parse_qasm(emit_qasm(c).text)
    assert again == c


@st.composite
def circuits(draw):
    n = draw(st.integers(1, 5))
    gates = []
    for _ in range(draw(st.integers(0, 12))):
        kind = draw(st.sampled_from(["h", "x", "s", "t", "rz", "u3", "cx"]))
        if kind == "cx" and n >= 2:
            qs = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            gates.append(Gate("cx", tuple(qs)))
        elif kind == "rz":
            gates.append(Gate("rz", (draw(st.integers(0, n - 1)),),
                              (draw(st.floats(-10, 10, allow_nan=False)),)))
        elif kind == "u3":
            angles = tuple(draw(st.floats(-10, 10, allow_nan=False)) for _ in range(3))
            gates.append(Gate("u3", (draw(st.integers(0, n - 1)),), angles))
        elif kind != "cx":
            gates.append(Gate(kind, (draw(st.integers(0, n - 1)),)))
    nmeas = draw(st.integers(0, n))
    return Circuit(n, tuple(gates), tuple((q, q) for q in range(nmeas)))


@settings(max_examples=60, deadline=None)
@given(circuits())
def test_round_trip_property(c):
    assert parse_qasm(emit_qasm(c).text) == c


def test_source_program_wrapper():
    sp = SourceProgram("OPENQASM 2.0; qreg q[1];", origin="unit")
    assert parse_qasm(sp).num_qubits == 1
