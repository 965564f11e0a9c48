"""Command-line front end.

Usage: leibconf -i FILE [-i FILE ...] COMMAND ARGS [--deg N] [--out FILE]
       [--machine]

Reports are printed to stdout as a human-readable section, a '---'
separator and a flat 'key = value' machine block.  Exit codes: 0 the
check passed, 1 it failed, 2 the input was invalid, 3 the solver could
not decide at the given degree bound.
"""

from __future__ import annotations

import argparse
import sys

from .poly import D, PolyParseError, X1
from .report import PreconditionError, Report
from .conformal import (
    ModuleAction,
    check_derivation,
    check_homomorphism,
    check_jacobi,
    check_module,
    mat_col,
)
from .cohomology import Cochain, delta, delta_squared_check, nr_bracket
from .extensions import (
    EQUIVALENT,
    NOT_EQUIVALENT,
    build_extension,
    check_cocycle,
    extract_cocycle,
    gauge_transform,
    mc_check,
    solve_equivalence,
)
from .wells import (
    AutoPair,
    DerPair,
    NONZERO,
    VANISHES,
    extend_derivation,
    induced_pair,
    lift_automorphism,
    wells_auto,
    wells_der,
)
from .workspace import (
    CochainDecl,
    CocycleDecl,
    ExtensionDecl,
    MapDecl,
    WorkspaceError,
    action_to_str,
    algebra_to_str,
    cochain_to_str,
    cocycle_to_str,
    extension_to_str,
    map_to_str,
    parse_workspace,
)

EXIT = {"pass": 0, "fail": 1, "undecided": 3}


class CliError(Exception):
    pass


class Output:
    def __init__(self, command):
        self.human = []
        self.machine = [("command", command)]
        self.verdict = "pass"
        self.blocks = []  # (kind, decl) results to serialize

    def say(self, line):
        self.human.append(line)

    def key(self, k, v):
        self.machine.append((k, str(v)))

    def from_report(self, rep: Report, max_failures=6):
        self.verdict = rep.verdict
        self.key("failure_count", len(rep.failures))
        if rep.failures:
            f = rep.failures[0]
            self.key("first_failure", f.label)
            self.key("first_residual", f.residual)
        for f in rep.failures[:max_failures]:
            self.say("  %s: %s" % (f.label, f.residual))
        if len(rep.failures) > max_failures:
            self.say("  ... %d more" % (len(rep.failures) - max_failures))
        for note in rep.notes:
            self.say("  note: %s" % note)


# ---------------------------------------------------------------------
# name resolution helpers


def _get(table, kind, name):
    if name not in table:
        raise CliError("unknown %s '%s'" % (kind, name))
    return table[name]


def _algebra_like(ws, name):
    """An algebra, or the total algebra of an extension."""
    if name in ws.algebras:
        return ws.algebras[name]
    if name in ws.extensions:
        return ws.extensions[name].extension.E
    raise CliError("unknown algebra or extension '%s'" % name)


def _map_between(ws, name, src, dst, what):
    decl = _get(ws.maps, "map", name)
    hom = decl.hom
    if hom.source != src or hom.target != dst:
        raise CliError(
            "map '%s' has the wrong shape for %s (%s -> %s given)"
            % (name, what, decl.from_name, decl.to_name)
        )
    return hom


def _action_of_extension(ws, name):
    """Module action and twist cochain of an abelian-kernel extension."""
    decl = _get(ws.extensions, "extension", name)
    ext = decl.extension
    if any(
        not all(p.is_zero() for p in v)
        for row in ext.H.sc
        for v in row
    ):
        raise CliError("extension '%s' does not have an abelian kernel" % name)
    c = extract_cocycle(ext)
    nr, nh = c.R.rank, c.H.rank
    flip = {1: -D - X1}
    left = [[mat_col(c.l[i], m) for m in range(nh)] for i in range(nr)]
    right = [
        [[p.subs(flip) for p in mat_col(c.r[j], m)] for j in range(nr)]
        for m in range(nh)
    ]
    act = ModuleAction(c.R, c.H.module, left, right)
    chi = Cochain(2, act, {k: list(v) for k, v in c.chi.items()})
    return decl, act, chi


# ---------------------------------------------------------------------
# result serialization


def _closure(ws, kind, decl):
    """Self-contained blocks for one object, dependencies first."""
    blocks = []
    seen = set()

    def add_algebra(name):
        if ("algebra", name) in seen:
            return
        seen.add(("algebra", name))
        blocks.append(algebra_to_str(name, ws.algebras[name]))

    def add_module_owner(name):
        if name in ws.algebras:
            add_algebra(name)
        elif name in ws.extensions:
            add_extension(ws.extensions[name])

    def add_extension(d):
        if ("extension", d.name) in seen:
            return
        add_algebra(d.over)
        add_algebra(d.kernel)
        seen.add(("extension", d.name))
        blocks.append(extension_to_str(d))

    def add_action(d):
        if ("action", d.name) in seen:
            return
        add_algebra(d.algebra_name)
        seen.add(("action", d.name))
        blocks.append(action_to_str(d))

    if kind == "algebra":
        name, alg = decl
        if name in ws.algebras:
            add_algebra(name)
        else:
            blocks.append(algebra_to_str(name, alg))
    elif kind == "action":
        add_action(decl)
    elif kind == "cocycle":
        add_algebra(decl.over)
        add_algebra(decl.kernel)
        blocks.append(cocycle_to_str(decl))
    elif kind == "cochain":
        add_action(ws.actions[decl.action_name])
        blocks.append(cochain_to_str(decl))
    elif kind == "map":
        add_module_owner(decl.from_name)
        add_module_owner(decl.to_name)
        blocks.append(map_to_str(decl))
    elif kind == "extension":
        add_extension(decl)
    else:
        raise ValueError(kind)
    return blocks


_PRINTER = {
    "algebra": lambda d: algebra_to_str(*d),
    "action": action_to_str,
    "cocycle": cocycle_to_str,
    "cochain": cochain_to_str,
    "map": map_to_str,
    "extension": extension_to_str,
}


# ---------------------------------------------------------------------
# commands


def cmd_check(ws, args, flags, out):
    if not args:
        raise CliError("check needs a subcommand: axioms|module|derivation|homomorphism|cocycle")
    sub, rest = args[0], args[1:]
    if sub == "axioms":
        (name,) = _arity(rest, 1, "check axioms NAME")
        rep = check_jacobi(_algebra_like(ws, name))
    elif sub == "module":
        (name,) = _arity(rest, 1, "check module ACTION")
        rep = check_module(_get(ws.actions, "action", name).action)
    elif sub == "derivation":
        if len(rest) == 2:
            aname, mname, kind = rest[0], rest[1], "left"
        else:
            aname, mname, kind = _arity(rest, 3, "check derivation ALG MAP [KIND]")
        alg = _algebra_like(ws, aname)
        hom = _map_between(ws, mname, alg.module, alg.module, "a derivation")
        if kind not in ("left", "right", "left_conformal", "right_conformal"):
            raise CliError("unknown derivation kind '%s'" % kind)
        rep = check_derivation(alg, hom, kind)
    elif sub == "homomorphism":
        a, b, mname = _arity(rest, 3, "check homomorphism A B MAP")
        alga, algb = _algebra_like(ws, a), _algebra_like(ws, b)
        hom = _map_between(ws, mname, alga.module, algb.module, "a homomorphism")
        rep = check_homomorphism(alga, algb, hom)
    elif sub == "cocycle":
        (name,) = _arity(rest, 1, "check cocycle NAME")
        rep = check_cocycle(_get(ws.cocycles, "cocycle", name).cocycle)
    else:
        raise CliError("unknown check subcommand '%s'" % sub)
    out.machine[0] = ("command", "check %s" % sub)
    out.key("target", " ".join(rest))
    out.from_report(rep)


def cmd_delta(ws, args, flags, out):
    (name,) = _arity(args, 1, "delta COCHAIN")
    decl = _get(ws.cochains, "cochain", name)
    res = delta(decl.cochain)
    out.key("arity", res.arity)
    out.key("nonzero_values", sum(1 for v in res.values.values() if any(not p.is_zero() for p in v)))
    out.blocks.append(("cochain", CochainDecl("result", decl.action_name, res)))


def cmd_delta2(ws, args, flags, out):
    (name,) = _arity(args, 1, "delta2 COCHAIN")
    decl = _get(ws.cochains, "cochain", name)
    out.from_report(delta_squared_check(decl.cochain))


def cmd_nr(ws, args, flags, out):
    f, g = _arity(args, 2, "nr COCHAIN COCHAIN")
    df = _get(ws.cochains, "cochain", f)
    dg = _get(ws.cochains, "cochain", g)
    if df.cochain.action != dg.cochain.action:
        raise CliError("cochains live on different complexes")
    res = nr_bracket(df.cochain, dg.cochain)
    out.key("arity", res.arity)
    out.key("is_zero", "yes" if res.is_zero() else "no")
    out.blocks.append(("cochain", CochainDecl("result", df.action_name, res)))


def cmd_mc(ws, args, flags, out):
    (name,) = _arity(args, 1, "mc COCYCLE")
    c = _get(ws.cocycles, "cocycle", name).cocycle
    rep = check_cocycle(c)
    defect_zero = mc_check(c).ok
    out.key("mc_defect_zero", "yes" if defect_zero else "no")
    out.from_report(rep)
    if rep.ok != defect_zero:
        out.say("  note: structural checklist and defect computation disagree")


def cmd_build(ws, args, flags, out):
    if not args or args[0] != "extension":
        raise CliError("usage: build extension COCYCLE")
    (name,) = _arity(args[1:], 1, "build extension COCYCLE")
    decl = _get(ws.cocycles, "cocycle", name)
    try:
        ext = build_extension(decl.cocycle)
    except PreconditionError as e:
        raise CliError("not a cocycle: %s" % e)
    rep = ext.validate()
    out.from_report(rep)
    out.key("total_rank", ext.E.rank)
    out.blocks.append(("extension", ExtensionDecl("result", decl.over, decl.kernel, ext)))


def cmd_extract(ws, args, flags, out):
    if not args or args[0] != "cocycle":
        raise CliError("usage: extract cocycle EXTENSION [SECTION]")
    rest = args[1:]
    if len(rest) not in (1, 2):
        raise CliError("usage: extract cocycle EXTENSION [SECTION]")
    decl = _get(ws.extensions, "extension", rest[0])
    ext = decl.extension
    s = None
    if len(rest) == 2:
        s = _map_between(ws, rest[1], ext.R.module, ext.E.module, "a section")
    c = extract_cocycle(ext, s)
    out.blocks.append(("cocycle", CocycleDecl("result", decl.over, decl.kernel, c)))


def cmd_equiv(ws, args, flags, out):
    n1, n2 = _arity(args, 2, "equiv COCYCLE COCYCLE")
    d1 = _get(ws.cocycles, "cocycle", n1)
    d2 = _get(ws.cocycles, "cocycle", n2)
    res = solve_equivalence(d1.cocycle, d2.cocycle, flags.deg)
    out.key("deg_bound", res.deg_bound)
    if res.verdict == EQUIVALENT:
        out.verdict = "pass"
        out.key("witness", "found")
        out.blocks.append(("map", MapDecl("result", d1.over, d1.kernel, res.beta)))
    elif res.verdict == NOT_EQUIVALENT:
        out.verdict = "fail"
        out.key("witness", "none")
    else:
        out.verdict = "undecided"


def cmd_gauge(ws, args, flags, out):
    cname, mname = _arity(args, 2, "gauge COCYCLE MAP")
    decl = _get(ws.cocycles, "cocycle", cname)
    c = decl.cocycle
    alpha = _map_between(ws, mname, c.R.module, c.H.module, "a gauge map")
    res = gauge_transform(c, alpha)
    out.blocks.append(("cocycle", CocycleDecl("result", decl.over, decl.kernel, res)))


def _auto_pair(ws, decl, gname, pname):
    c = decl.cocycle
    gamma = _map_between(ws, gname, c.H.module, c.H.module, "gamma")
    phi = _map_between(ws, pname, c.R.module, c.R.module, "phi")
    return AutoPair(gamma, phi)


def cmd_wells(ws, args, flags, out):
    if not args:
        raise CliError("wells needs a subcommand: auto|der")
    sub, rest = args[0], args[1:]
    out.machine[0] = ("command", "wells %s" % sub)
    if sub == "auto":
        cname, gname, pname = _arity(rest, 3, "wells auto COCYCLE GAMMA PHI")
        decl = _get(ws.cocycles, "cocycle", cname)
        pair = _auto_pair(ws, decl, gname, pname)
        try:
            ob = wells_auto(decl.cocycle, pair, flags.deg)
        except PreconditionError as e:
            raise CliError(str(e))
        out.key("deg_bound", ob.deg_bound)
        out.key("obstruction", ob.verdict)
        out.verdict = {VANISHES: "pass", NONZERO: "fail"}.get(ob.verdict, "undecided")
        if ob.verdict == VANISHES:
            out.blocks.append(("map", MapDecl("result", decl.over, decl.kernel, ob.witness)))
    elif sub == "der":
        ename, drname, dhname = _arity(rest, 3, "wells der EXTENSION DR DH")
        decl, act, chi = _action_of_extension(ws, ename)
        d = _der_pair(ws, decl, drname, dhname)
        try:
            ob = wells_der(act, chi, d, flags.deg)
        except PreconditionError as e:
            raise CliError(str(e))
        out.key("deg_bound", ob.deg_bound)
        out.key("obstruction", ob.verdict)
        out.verdict = "pass" if ob.verdict == VANISHES else "fail"
        if ob.verdict == VANISHES:
            out.blocks.append(("map", MapDecl("result", decl.over, decl.kernel, ob.witness)))
    else:
        raise CliError("unknown wells subcommand '%s'" % sub)


def _der_pair(ws, decl, drname, dhname):
    ext = decl.extension
    dr = _map_between(ws, drname, ext.R.module, ext.R.module, "d_R")
    dh = _map_between(ws, dhname, ext.H.module, ext.H.module, "d_H")
    return DerPair(dr, dh)


def cmd_lift(ws, args, flags, out):
    cname, gname, pname = _arity(args, 3, "lift COCYCLE GAMMA PHI")
    decl = _get(ws.cocycles, "cocycle", cname)
    pair = _auto_pair(ws, decl, gname, pname)
    try:
        ob = wells_auto(decl.cocycle, pair, flags.deg)
    except PreconditionError as e:
        raise CliError(str(e))
    out.key("obstruction", ob.verdict)
    if ob.verdict != VANISHES:
        out.verdict = "fail" if ob.verdict == NONZERO else "undecided"
        out.say("  no lift at degree bound %d" % ob.deg_bound)
        return
    f = lift_automorphism(decl.cocycle, pair, ob.witness)
    ext = build_extension(decl.cocycle)
    ext_decl = ExtensionDecl("result_ext", decl.over, decl.kernel, ext)
    ws._add(ws.extensions, "extension", "result_ext", ext_decl)
    out.blocks.append(("extension", ext_decl))
    out.blocks.append(("map", MapDecl("result", "result_ext", "result_ext", f)))


def cmd_extend(ws, args, flags, out):
    if not args or args[0] != "derivation":
        raise CliError("usage: extend derivation EXTENSION DR DH")
    ename, drname, dhname = _arity(args[1:], 3, "extend derivation EXTENSION DR DH")
    decl, act, chi = _action_of_extension(ws, ename)
    d = _der_pair(ws, decl, drname, dhname)
    try:
        ob = wells_der(act, chi, d, flags.deg)
    except PreconditionError as e:
        raise CliError(str(e))
    out.key("obstruction", ob.verdict)
    if ob.verdict != VANISHES:
        out.verdict = "fail"
        out.say("  no extension at degree bound %d" % ob.deg_bound)
        return
    de = extend_derivation(act, chi, d, ob.witness)
    out.blocks.append(("map", MapDecl("result", decl.name, decl.name, de)))


def cmd_induced(ws, args, flags, out):
    if not args or args[0] != "pair":
        raise CliError("usage: induced pair EXTENSION MAP [SECTION]")
    rest = args[1:]
    if len(rest) not in (2, 3):
        raise CliError("usage: induced pair EXTENSION MAP [SECTION]")
    decl = _get(ws.extensions, "extension", rest[0])
    ext = decl.extension
    f = _map_between(ws, rest[1], ext.E.module, ext.E.module, "an automorphism")
    s = ext.canonical_section()
    if len(rest) == 3:
        s = _map_between(ws, rest[2], ext.R.module, ext.E.module, "a section")
    try:
        pair = induced_pair(ext, s, f)
    except PreconditionError as e:
        raise CliError(str(e))
    out.blocks.append(("map", MapDecl("result_gamma", decl.kernel, decl.kernel, pair.gamma)))
    out.blocks.append(("map", MapDecl("result_phi", decl.over, decl.over, pair.phi)))


COMMANDS = {
    "check": cmd_check,
    "delta": cmd_delta,
    "delta2": cmd_delta2,
    "nr": cmd_nr,
    "mc": cmd_mc,
    "build": cmd_build,
    "extract": cmd_extract,
    "equiv": cmd_equiv,
    "gauge": cmd_gauge,
    "wells": cmd_wells,
    "lift": cmd_lift,
    "extend": cmd_extend,
    "induced": cmd_induced,
}


def _arity(args, n, usage):
    if len(args) != n:
        raise CliError("usage: %s" % usage)
    return args


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="leibconf",
        description="Exact workbench for Leibniz conformal algebra extensions.",
    )
    ap.add_argument("-i", "--in", dest="inputs", action="append", default=[],
                    metavar="FILE", help="input file (repeatable)")
    ap.add_argument("--deg", type=int, default=None, metavar="N",
                    help="degree bound for equivalence solving")
    ap.add_argument("--out", default=None, metavar="FILE",
                    help="write the result object (with dependencies) to FILE")
    ap.add_argument("--machine", action="store_true",
                    help="print only the machine block")
    ap.add_argument("words", nargs="*", help="command and its arguments")
    flags = ap.parse_args(argv)

    if not flags.words:
        ap.print_usage(sys.stderr)
        return 2
    cmd, args = flags.words[0], flags.words[1:]
    if cmd not in COMMANDS:
        print("error: unknown command '%s'" % cmd, file=sys.stderr)
        return 2

    try:
        ws = parse_workspace(flags.inputs)
    except (WorkspaceError, PolyParseError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2

    out = Output(cmd)
    try:
        COMMANDS[cmd](ws, args, flags, out)
    except CliError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (WorkspaceError, PreconditionError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2

    code = EXIT[out.verdict]
    header = "%s: %s" % (" ".join(flags.words), out.verdict.upper())
    lines = [] if flags.machine else [header] + out.human
    if not flags.machine:
        for kind, decl in out.blocks:
            lines.append(_PRINTER[kind](decl))
    machine = out.machine + [("verdict", out.verdict), ("exit", str(code))]
    if not flags.machine:
        lines.append("---")
    lines.extend("%s = %s" % kv for kv in machine)
    print("\n".join(lines))

    if flags.out:
        blocks = []
        for kind, decl in out.blocks:
            for b in _closure(ws, kind, decl):
                if b not in blocks:
                    blocks.append(b)
        with open(flags.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(blocks) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
