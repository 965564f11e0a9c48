"""Declarative input language for naming algebras, actions, cocycles,
cochains, maps and extensions, plus the matching serializers.

The format is line-oriented and whitespace-insensitive:

    algebra Vir {
      basis: L;
      bracket L L := (d + 2*x)*L;
    }

Every right-hand side is a sum of (polynomial)*basisname terms or 0.
Omitted lines default to zero.  Comments start with '#'.  Names must be
declared before they are referenced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import Poly, parse_poly, poly_to_str, PolyParseError
from .conformal import (
    FreeModule,
    LeibnizConformalAlgebra,
    ModuleAction,
    ModuleHom,
    mat_col,
    vzero,
)
from .cohomology import Cochain, MAX_ARITY
from .extensions import Extension, NonAbelianCocycle, _joined_names

RESERVED = {"d", "x", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"}


class WorkspaceError(Exception):
    def __init__(self, message, filename=None, line=None, col=None):
        self.message = message
        self.filename = filename
        self.line = line
        self.col = col
        where = ""
        if filename is not None:
            where = "%s:" % filename
        if line is not None:
            where += "%d:%d: " % (line, col)
        elif where:
            where += " "
        super().__init__(where + message)


@dataclass
class ActionDecl:
    name: str
    algebra_name: str
    action: ModuleAction


@dataclass
class CocycleDecl:
    name: str
    over: str
    kernel: str
    cocycle: NonAbelianCocycle


@dataclass
class CochainDecl:
    name: str
    action_name: str
    cochain: Cochain


@dataclass
class MapDecl:
    name: str
    from_name: str
    to_name: str
    hom: ModuleHom


@dataclass
class ExtensionDecl:
    name: str
    over: str
    kernel: str
    extension: Extension


@dataclass
class Workspace:
    algebras: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    cocycles: dict = field(default_factory=dict)
    cochains: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    extensions: dict = field(default_factory=dict)

    def _add(self, table, kind, name, value, tok=None):
        if name in table:
            raise WorkspaceError(
                "duplicate %s '%s'" % (kind, name),
                *(tok.loc if tok else (None, None, None)),
            )
        table[name] = value

    def module_of(self, name):
        """The free module behind an algebra or extension name."""
        if name in self.algebras and name in self.extensions:
            raise WorkspaceError("'%s' names both an algebra and an extension" % name)
        if name in self.algebras:
            return self.algebras[name].module
        if name in self.extensions:
            return self.extensions[name].extension.E.module
        raise WorkspaceError("unknown algebra or extension '%s'" % name)


# ---------------------------------------------------------------------
# lexer


@dataclass
class Token:
    kind: str  # "ident", "number", "punct", "eof"
    text: str
    filename: str
    line: int
    col: int

    @property
    def loc(self):
        return (self.filename, self.line, self.col)


def _lex(text, filename):
    toks = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            toks.append(Token("ident", text[i:j], filename, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("number", text[i:j], filename, line, start_col))
            col += j - i
            i = j
            continue
        if ch == ":" and i + 1 < n and text[i + 1] == "=":
            toks.append(Token("punct", ":=", filename, line, start_col))
            i += 2
            col += 2
            continue
        if ch in "{};:,*+-^/()":
            toks.append(Token("punct", ch, filename, line, start_col))
            i += 1
            col += 1
            continue
        raise WorkspaceError("unexpected character %r" % ch, filename, line, col)
    toks.append(Token("eof", "", filename, line, col))
    return toks


# ---------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, toks, ws: Workspace):
        self.toks = toks
        self.pos = 0
        self.ws = ws

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise WorkspaceError(message, *tok.loc)

    def expect(self, text) -> Token:
        t = self.next()
        if t.text != text:
            self.error("expected %r, found %r" % (text, t.text or "end of input"), t)
        return t

    def expect_ident(self, what="a name") -> Token:
        t = self.next()
        if t.kind != "ident":
            self.error("expected %s, found %r" % (what, t.text or "end of input"), t)
        return t

    def parse_file(self):
        while self.peek().kind != "eof":
            kw = self.expect_ident("a block keyword")
            handler = {
                "algebra": self.parse_algebra,
                "action": self.parse_action,
                "cocycle": self.parse_cocycle,
                "cochain": self.parse_cochain,
                "map": self.parse_map,
                "extension": self.parse_extension,
            }.get(kw.text)
            if handler is None:
                self.error("unknown block keyword '%s'" % kw.text, kw)
            handler()

    # -- shared pieces

    def name_list(self):
        names = [self.expect_ident("a basis name")]
        while self.peek().text == ",":
            self.next()
            names.append(self.expect_ident("a basis name"))
        for t in names:
            if t.text in RESERVED:
                self.error("'%s' is reserved for polynomials" % t.text, t)
        seen = set()
        for t in names:
            if t.text in seen:
                self.error("duplicate basis name '%s'" % t.text, t)
            seen.add(t.text)
        return names

    def field_ref(self, keyword, what="a name"):
        self.expect(keyword)
        self.expect(":")
        t = self.expect_ident(what)
        self.expect(";")
        return t

    def basis_index(self, names, what="a basis name"):
        t = self.expect_ident(what)
        if t.text not in names:
            self.error("unknown basis name '%s'" % t.text, t)
        return names.index(t.text)

    def rhs(self, target_names, max_param):
        """Sum of (poly)*basisname terms, or 0; returns a vector."""
        vec = vzero(len(target_names))
        first = self.peek()
        if first.text == "0":
            self.next()
            nxt = self.peek()
            if nxt.text in "+-":
                self.error("'0' must stand alone on a right-hand side", nxt)
            self.expect(";")
            return vec
        sign = 1
        while True:
            factors, start = self._term_factors()
            last = factors[-1]
            if not (len(last) == 1 and last[0].kind == "ident"
                    and last[0].text in target_names):
                self.error(
                    "each term must end in '* basisname' over {%s}"
                    % ", ".join(target_names),
                    last[0],
                )
            idx = target_names.index(last[0].text)
            if len(factors) == 1:
                coeff = Poly.const(1)
            else:
                src = "*".join(
                    "".join(t.text for t in f) for f in factors[:-1]
                )
                try:
                    coeff = parse_poly(src)
                except PolyParseError as e:
                    self.error("bad polynomial %r: %s" % (src, e), start)
            if coeff.max_param() > max_param:
                self.error(
                    "coefficient uses a parameter beyond x%s"
                    % (max_param if max_param > 1 else ""),
                    start,
                )
            vec[idx] = vec[idx] + (coeff if sign == 1 else -coeff)
            t = self.next()
            if t.text == ";":
                return vec
            if t.text == "+":
                sign = 1
            elif t.text == "-":
                sign = -1
            else:
                self.error("expected '+', '-' or ';', found %r" % t.text, t)

    def _term_factors(self):
        """Token runs of one product term, split at top-level '*'."""
        factors = [[]]
        start = self.peek()
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                self.error("unterminated term (missing ';')", t)
            if depth == 0 and t.text in {";", "+", "-"}:
                break
            self.next()
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                if depth == 0:
                    self.error("unbalanced ')'", t)
                depth -= 1
            if t.text == "*" and depth == 0:
                if not factors[-1]:
                    self.error("empty factor before '*'", t)
                factors.append([])
                continue
            factors[-1].append(t)
        if depth:
            self.error("unbalanced '('", start)
        if not factors[-1]:
            self.error("empty term", start)
        return factors, start

    def lookup(self, table, kind, tok):
        if tok.text not in table:
            self.error("unknown %s '%s'" % (kind, tok.text), tok)
        return table[tok.text]

    # -- blocks

    def parse_algebra(self):
        name = self.expect_ident("an algebra name")
        self.expect("{")
        self.expect("basis")
        self.expect(":")
        names = [t.text for t in self.name_list()]
        self.expect(";")
        n = len(names)
        sc = [[vzero(n) for _ in range(n)] for _ in range(n)]
        while self.peek().text != "}":
            self.expect("bracket")
            i = self.basis_index(names)
            j = self.basis_index(names)
            self.expect(":=")
            sc[i][j] = self.rhs(names, 1)
        self.expect("}")
        alg = LeibnizConformalAlgebra(FreeModule.of(names), sc)
        self.ws._add(self.ws.algebras, "algebra", name.text, alg, name)

    def parse_action(self):
        name = self.expect_ident("an action name")
        self.expect("{")
        alg_tok = self.field_ref("algebra", "an algebra name")
        alg = self.lookup(self.ws.algebras, "algebra", alg_tok)
        self.expect("space")
        self.expect(":")
        snames = [t.text for t in self.name_list()]
        self.expect(";")
        anames = alg.module.basis_names
        nr, nh = alg.rank, len(snames)
        left = [[vzero(nh) for _ in range(nh)] for _ in range(nr)]
        right = [[vzero(nh) for _ in range(nr)] for _ in range(nh)]
        while self.peek().text != "}":
            kw = self.expect_ident("'left' or 'right'")
            if kw.text == "left":
                i = self.basis_index(anames)
                m = self.basis_index(snames)
                self.expect(":=")
                left[i][m] = self.rhs(snames, 1)
            elif kw.text == "right":
                m = self.basis_index(snames)
                i = self.basis_index(anames)
                self.expect(":=")
                right[m][i] = self.rhs(snames, 1)
            else:
                self.error("expected 'left' or 'right', found '%s'" % kw.text, kw)
        self.expect("}")
        act = ModuleAction(alg, FreeModule.of(snames), left, right)
        self.ws._add(
            self.ws.actions, "action", name.text,
            ActionDecl(name.text, alg_tok.text, act), name,
        )

    def parse_cocycle(self):
        name = self.expect_ident("a cocycle name")
        self.expect("{")
        over_tok = self.field_ref("over", "an algebra name")
        R = self.lookup(self.ws.algebras, "algebra", over_tok)
        ker_tok = self.field_ref("kernel", "an algebra name")
        H = self.lookup(self.ws.algebras, "algebra", ker_tok)
        rnames, hnames = R.module.basis_names, H.module.basis_names
        nr, nh = R.rank, H.rank
        l = [[vzero(nh) for _ in range(nh)] for _ in range(nr)]
        r = [[vzero(nh) for _ in range(nh)] for _ in range(nr)]
        chi = {(i, j): vzero(nh) for i in range(nr) for j in range(nr)}
        while self.peek().text != "}":
            kw = self.expect_ident("'l', 'r' or 'chi'")
            if kw.text in ("l", "r"):
                i = self.basis_index(rnames)
                m = self.basis_index(hnames)
                self.expect(":=")
                col = self.rhs(hnames, 1)
                fam = l if kw.text == "l" else r
                for t in range(nh):
                    fam[i][t][m] = col[t]
            elif kw.text == "chi":
                i = self.basis_index(rnames)
                j = self.basis_index(rnames)
                self.expect(":=")
                chi[(i, j)] = self.rhs(hnames, 1)
            else:
                self.error("expected 'l', 'r' or 'chi', found '%s'" % kw.text, kw)
        self.expect("}")
        c = NonAbelianCocycle(R, H, l, r, chi)
        self.ws._add(
            self.ws.cocycles, "cocycle", name.text,
            CocycleDecl(name.text, over_tok.text, ker_tok.text, c), name,
        )

    def parse_cochain(self):
        name = self.expect_ident("a cochain name")
        self.expect("{")
        act_tok = self.field_ref("action", "an action name")
        decl = self.lookup(self.ws.actions, "action", act_tok)
        self.expect("arity")
        self.expect(":")
        t = self.next()
        if t.kind != "number" or not 1 <= int(t.text) <= MAX_ARITY:
            self.error("arity must be a number between 1 and %d" % MAX_ARITY, t)
        arity = int(t.text)
        self.expect(";")
        act = decl.action
        anames = act.algebra.module.basis_names
        snames = act.space.basis_names
        from itertools import product

        values = {
            tup: vzero(act.space.rank)
            for tup in product(range(act.algebra.rank), repeat=arity)
        }
        while self.peek().text != "}":
            self.expect("value")
            tup = tuple(self.basis_index(anames) for _ in range(arity))
            self.expect(":=")
            values[tup] = self.rhs(snames, arity - 1)
        self.expect("}")
        ch = Cochain(arity, act, values)
        self.ws._add(
            self.ws.cochains, "cochain", name.text,
            CochainDecl(name.text, act_tok.text, ch), name,
        )

    def parse_map(self):
        name = self.expect_ident("a map name")
        self.expect("{")
        from_tok = self.field_ref("from", "an algebra or extension name")
        to_tok = self.field_ref("to", "an algebra or extension name")
        try:
            src = self.ws.module_of(from_tok.text)
        except WorkspaceError as e:
            self.error(e.message, from_tok)
        try:
            dst = self.ws.module_of(to_tok.text)
        except WorkspaceError as e:
            self.error(e.message, to_tok)
        mat = [vzero(src.rank) for _ in range(dst.rank)]
        while self.peek().text != "}":
            kw = self.expect_ident("'send'")
            if kw.text != "send":
                self.error("expected 'send', found '%s'" % kw.text, kw)
            s = self.basis_index(src.basis_names)
            eq = self.peek()
            self.expect(":=")
            col = self.rhs(dst.basis_names, 0)
            for p in col:
                if p.max_param():
                    self.error("map entries may only use d", eq)
            for t in range(dst.rank):
                mat[t][s] = col[t]
        self.expect("}")
        hom = ModuleHom(src, dst, mat)
        self.ws._add(
            self.ws.maps, "map", name.text,
            MapDecl(name.text, from_tok.text, to_tok.text, hom), name,
        )

    def parse_extension(self):
        name = self.expect_ident("an extension name")
        open_tok = self.expect("{")
        over_tok = self.field_ref("over", "an algebra name")
        R = self.lookup(self.ws.algebras, "algebra", over_tok)
        ker_tok = self.field_ref("kernel", "an algebra name")
        H = self.lookup(self.ws.algebras, "algebra", ker_tok)
        names = list(_joined_names(R.module.basis_names, H.module.basis_names))
        nr, nh = R.rank, H.rank
        total = nr + nh
        sc = [[vzero(total) for _ in range(total)] for _ in range(total)]
        while self.peek().text != "}":
            self.expect("bracket")
            i = self.basis_index(names)
            j = self.basis_index(names)
            self.expect(":=")
            sc[i][j] = self.rhs(names, 1)
        self.expect("}")
        E = LeibnizConformalAlgebra(FreeModule.of(names), sc)
        ext = _assemble_extension(R, H, E)
        rep = ext.validate()
        if not rep.ok:
            self.error(
                "invalid extension block: %s" % rep.first_failure.label, open_tok
            )
        _check_extension_blocks(ext, open_tok)
        self.ws._add(
            self.ws.extensions, "extension", name.text,
            ExtensionDecl(name.text, over_tok.text, ker_tok.text, ext), name,
        )


def _assemble_extension(R, H, E) -> Extension:
    nr, nh = R.rank, H.rank
    alpha = ModuleHom(
        H.module, E.module,
        [vzero(nh) for _ in range(nr)]
        + [[Poly.const(1) if m == t else Poly.zero() for t in range(nh)]
           for m in range(nh)],
    )
    proj = ModuleHom(
        E.module, R.module,
        [[Poly.const(1) if i == j else Poly.zero() for j in range(nr)] + vzero(nh)
         for i in range(nr)],
    )
    return Extension(R, H, E, alpha, proj)


def _check_extension_blocks(ext: Extension, tok):
    """The R-part of the bracket must be R's, and the H block H's."""
    nr, nh = ext.R.rank, ext.H.rank

    def bad(msg):
        raise WorkspaceError(msg, *tok.loc)

    for i in range(nr):
        for j in range(nr):
            if ext.E.sc[i][j][:nr] != ext.R.sc[i][j]:
                bad("bracket of the R part does not project onto the base bracket")
    for i in range(nr + nh):
        for j in range(nr + nh):
            if (i >= nr or j >= nr) and any(
                not p.is_zero() for p in ext.E.sc[i][j][:nr]
            ):
                bad("bracket lines touching the kernel must land in the kernel")
    for m in range(nh):
        for t in range(nh):
            if ext.E.sc[nr + m][nr + t][nr:] != ext.H.sc[m][t]:
                bad("bracket of the kernel part does not match the kernel algebra")


def parse_text(text, ws: Workspace | None = None, filename="<input>") -> Workspace:
    ws = ws if ws is not None else Workspace()
    _Parser(_lex(text, filename), ws).parse_file()
    return ws


def parse_workspace(paths) -> Workspace:
    ws = Workspace()
    for path in paths:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise WorkspaceError("cannot read %s: %s" % (path, e))
        parse_text(text, ws, str(path))
    return ws


# ---------------------------------------------------------------------
# serializers


def _rhs_str(vec, names) -> str:
    terms = [
        "(%s)*%s" % (poly_to_str(p), names[t])
        for t, p in enumerate(vec)
        if not p.is_zero()
    ]
    return " + ".join(terms) if terms else "0"


def algebra_to_str(name, alg: LeibnizConformalAlgebra) -> str:
    names = alg.module.basis_names
    lines = ["algebra %s {" % name, "  basis: %s;" % ", ".join(names)]
    for i in range(alg.rank):
        for j in range(alg.rank):
            rhs = _rhs_str(alg.sc[i][j], names)
            if rhs != "0":
                lines.append("  bracket %s %s := %s;" % (names[i], names[j], rhs))
    lines.append("}")
    return "\n".join(lines)


def action_to_str(decl: ActionDecl) -> str:
    act = decl.action
    anames = act.algebra.module.basis_names
    snames = act.space.basis_names
    lines = [
        "action %s {" % decl.name,
        "  algebra: %s;" % decl.algebra_name,
        "  space: %s;" % ", ".join(snames),
    ]
    for i, ai in enumerate(anames):
        for m, vm in enumerate(snames):
            rhs = _rhs_str(act.left[i][m], snames)
            if rhs != "0":
                lines.append("  left %s %s := %s;" % (ai, vm, rhs))
    for m, vm in enumerate(snames):
        for i, ai in enumerate(anames):
            rhs = _rhs_str(act.right[m][i], snames)
            if rhs != "0":
                lines.append("  right %s %s := %s;" % (vm, ai, rhs))
    lines.append("}")
    return "\n".join(lines)


def cocycle_to_str(decl: CocycleDecl) -> str:
    c = decl.cocycle
    rnames = c.R.module.basis_names
    hnames = c.H.module.basis_names
    nr, nh = c.R.rank, c.H.rank
    lines = [
        "cocycle %s {" % decl.name,
        "  over: %s;" % decl.over,
        "  kernel: %s;" % decl.kernel,
    ]
    for kw, fam in (("l", c.l), ("r", c.r)):
        for i in range(nr):
            for m in range(nh):
                rhs = _rhs_str(mat_col(fam[i], m), hnames)
                if rhs != "0":
                    lines.append(
                        "  %s %s %s := %s;" % (kw, rnames[i], hnames[m], rhs)
                    )
    for i in range(nr):
        for j in range(nr):
            rhs = _rhs_str(c.chi[(i, j)], hnames)
            if rhs != "0":
                lines.append("  chi %s %s := %s;" % (rnames[i], rnames[j], rhs))
    lines.append("}")
    return "\n".join(lines)


def cochain_to_str(decl: CochainDecl) -> str:
    ch = decl.cochain
    anames = ch.algebra.module.basis_names
    snames = ch.action.space.basis_names
    lines = [
        "cochain %s {" % decl.name,
        "  action: %s;" % decl.action_name,
        "  arity: %d;" % ch.arity,
    ]
    for tup in sorted(ch.values):
        rhs = _rhs_str(ch.values[tup], snames)
        if rhs != "0":
            lines.append(
                "  value %s := %s;" % (" ".join(anames[k] for k in tup), rhs)
            )
    lines.append("}")
    return "\n".join(lines)


def map_to_str(decl: MapDecl) -> str:
    hom = decl.hom
    lines = [
        "map %s {" % decl.name,
        "  from: %s;" % decl.from_name,
        "  to: %s;" % decl.to_name,
    ]
    for s, sn in enumerate(hom.source.basis_names):
        rhs = _rhs_str(mat_col(hom.mat, s), hom.target.basis_names)
        if rhs != "0":
            lines.append("  send %s := %s;" % (sn, rhs))
    lines.append("}")
    return "\n".join(lines)


def extension_to_str(decl: ExtensionDecl) -> str:
    ext = decl.extension
    names = ext.E.module.basis_names
    total = len(names)
    lines = [
        "extension %s {" % decl.name,
        "  over: %s;" % decl.over,
        "  kernel: %s;" % decl.kernel,
    ]
    for i in range(total):
        for j in range(total):
            rhs = _rhs_str(ext.E.sc[i][j], names)
            if rhs != "0":
                lines.append("  bracket %s %s := %s;" % (names[i], names[j], rhs))
    lines.append("}")
    return "\n".join(lines)
