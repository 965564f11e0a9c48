import pytest

from leibconf.conformal import check_jacobi, check_module
from leibconf.extensions import check_cocycle, extract_cocycle
from leibconf.workspace import (
    WorkspaceError,
    action_to_str,
    algebra_to_str,
    cochain_to_str,
    cocycle_to_str,
    extension_to_str,
    map_to_str,
    parse_text,
)

SRC = """
# a virasoro-type algebra and a module over it
algebra Vir {
  basis: L;
  bracket L L := (d + 2*x)*L;
}
algebra H { basis: v; }
action M {
  algebra: Vir;
  space: v;
  left L v := (d + 2*x)*v;
}
cocycle c {
  over: Vir;
  kernel: H;
  l L v := (d + 2*x)*v;
  chi L L := (1)*v;
}
cochain F {
  action: M;
  arity: 2;
  value L L := (x)*v;
}
map beta {
  from: Vir;
  to: H;
  send L := (d^2)*v;
}
algebra A { basis: a; }
algebra K { basis: h; }
cocycle cns {
  over: A;
  kernel: K;
  chi a a := (1)*h;
}
extension E1 {
  over: A;
  kernel: K;
  bracket a a := (1)*h;
}
"""


def _serialize_all(ws):
    out = []
    for name, alg in ws.algebras.items():
        out.append(algebra_to_str(name, alg))
    out.extend(action_to_str(d) for d in ws.actions.values())
    out.extend(extension_to_str(d) for d in ws.extensions.values())
    out.extend(cocycle_to_str(d) for d in ws.cocycles.values())
    out.extend(cochain_to_str(d) for d in ws.cochains.values())
    out.extend(map_to_str(d) for d in ws.maps.values())
    return "\n".join(out)


def test_parse_and_semantics():
    ws = parse_text(SRC)
    assert check_jacobi(ws.algebras["Vir"]).ok
    assert check_module(ws.actions["M"].action).ok
    assert check_cocycle(ws.cocycles["cns"].cocycle).ok
    back = extract_cocycle(ws.extensions["E1"].extension)
    assert back == ws.cocycles["cns"].cocycle


def test_print_parse_print_fixpoint():
    ws = parse_text(SRC)
    text1 = _serialize_all(ws)
    ws2 = parse_text(text1)
    assert _serialize_all(ws2) == text1


def test_defaults_are_zero():
    ws = parse_text("algebra B { basis: b; }")
    alg = ws.algebras["B"]
    assert all(p.is_zero() for p in alg.sc[0][0])


def test_diagnostics():
    cases = [
        ("algebra B { basis: d; }", "reserved"),
        ("algebra B { basis: b; bracket b q := (d)*b; }", "unknown basis"),
        ("algebra B { basis: b; bracket b b := (x2)*b; }", "parameter"),
        ("algebra B { basis: b; bracket b b := (d)*b }", "missing ';'"),
        ("cocycle q { over: Nope; kernel: Nope; }", "unknown algebra"),
        ("algebra B { basis: b; } algebra B { basis: b; }", "duplicate"),
        ("map m { from: A; to: A; }", "unknown algebra or extension"),
        ("algebra B { basis: b; } map m { from: B; to: B; send b := (x)*b; }",
         "parameter"),
    ]
    for bad, frag in cases:
        with pytest.raises(WorkspaceError) as e:
            parse_text(bad)
        assert frag in str(e.value), (bad, str(e.value))


def test_diagnostics_carry_location():
    with pytest.raises(WorkspaceError) as e:
        parse_text("algebra B {\n  basis: b;\n  bracket b q := (d)*b;\n}")
    assert ":3:" in str(e.value)


def test_extension_block_must_match_base_and_kernel():
    bad = """
algebra A { basis: a; }
algebra K { basis: h; }
extension E {
  over: A;
  kernel: K;
  bracket a a := (1)*a;
}
"""
    with pytest.raises(WorkspaceError):
        parse_text(bad)
