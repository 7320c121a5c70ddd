"""Surface syntax for closure expressions.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom
    atom   := 's' | rational | '(' expr ')' | 'adj(' expr ')'
            | 'inv(' expr ')' | 'psi(' series ')'

``s*`` is read as adj(s) when the star is followed by the end of input,
')', '+', '-' or another '*'; otherwise the star is multiplication.
"""

import re

from . import rational_series as rs
from .closure_calculus import Add, Adj, Const, Inv, Mul, Neg, Psi, Sub, Sym
from .exact_linalg import rat, rat_str


class ExprSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|([-+*()]))")
_FUNCS = ("adj", "inv", "psi")


def _tokenize(text):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                raise ExprSyntaxError(f"unexpected character {rest.strip()[0]!r}",
                                      pos + len(rest) - len(rest.lstrip()))
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append((m.group(3), m.group(3), start))
        pos = m.end()
        if toks[-1][1] == "psi":
            # capture the raw series text inside psi( ... )
            m2 = re.compile(r"\s*\(").match(text, pos)
            if not m2:
                raise ExprSyntaxError("expected '(' after psi", pos)
            depth, j = 1, m2.end()
            while j < len(text) and depth:
                depth += {"(": 1, ")": -1}.get(text[j], 0)
                j += 1
            if depth:
                raise ExprSyntaxError("unbalanced parenthesis in psi", m2.end() - 1)
            toks.append(("series", text[m2.end():j - 1], m2.end()))
            pos = j
    toks.append(("end", None, len(text)))
    return toks


def parse_expression(text):
    toks = _tokenize(text)
    i = 0

    def peek(k=0):
        return toks[min(i + k, len(toks) - 1)][0]

    def take(kind=None):
        nonlocal i
        tok = toks[i]
        if kind and tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok[1] or tok[0]!r}", tok[2])
        i += 1
        return tok

    def expr():
        out = term()
        while peek() in ("+", "-"):
            op = take()[0]
            rhs = term()
            out = Add(out, rhs) if op == "+" else Sub(out, rhs)
        return out

    def term():
        out = factor()
        while peek() == "*":
            take()
            out = Mul(out, factor())
        return out

    def factor():
        if peek() == "-":
            take()
            return Neg(factor())
        return atom()

    def atom():
        kind, val, where = toks[i]
        if kind == "num":
            take()
            return Const(rat(val))
        if kind == "(":
            take()
            inner = expr()
            take(")")
            return inner
        if kind == "name":
            take()
            if val == "s":
                if peek() == "*" and peek(1) in ("end", ")", "+", "-", "*"):
                    take()
                    return Adj(Sym())
                return Sym()
            if val in ("adj", "inv"):
                take("(")
                inner = expr()
                take(")")
                return Adj(inner) if val == "adj" else Inv(inner)
            if val == "psi":
                _, body, at = take("series")
                try:
                    return Psi(body.strip(), rs.parse_series(body, offset=at))
                except rs.SeriesSyntaxError as exc:
                    raise ExprSyntaxError(f"bad series: {exc.msg}", exc.pos) from exc
            raise ExprSyntaxError(f"unknown identifier {val!r}", where)
        raise ExprSyntaxError(f"unexpected {val or kind!r}", where)

    result = expr()
    if peek() != "end":
        raise ExprSyntaxError(f"unexpected {toks[i][1]!r}", toks[i][2])
    return result


_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3}


def to_text(e):
    """Canonical text; parse_expression(to_text(e)) == e."""
    if isinstance(e, Sym):
        return "s"
    if isinstance(e, Const):
        txt = rat_str(e.value)
        return f"({txt})" if e.value < 0 else txt
    if isinstance(e, Psi):
        return f"psi({e.text})"
    if isinstance(e, Adj):
        return f"adj({to_text(e.arg)})"
    if isinstance(e, Inv):
        return f"inv({to_text(e.arg)})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    op = {Add: " + ", Sub: " - ", Mul: " * "}[type(e)]
    p = _PREC[type(e)]
    # left-associative: the right operand needs parentheses at equal precedence
    right = _wrap(e.right, p + 1)
    if isinstance(e.right, Neg):
        right = f"({right})"  # keeps "s * -s" from reading as adj(s) - s
    return _wrap(e.left, p) + op + right


def _wrap(e, p):
    inner = to_text(e)
    if type(e) in _PREC and _PREC[type(e)] < p:
        return f"({inner})"
    return inner
