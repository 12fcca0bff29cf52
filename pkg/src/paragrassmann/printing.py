"""Deterministic text, LaTeX and JSON renderings.

Text output is pipe-friendly ASCII that re-parses to the same value
(Laurent exponents print as q^-1 etc.).  LaTeX folds the square-root
symbols into half-integer weight powers for readability.  JSON follows
one fixed schema per type; term order is always the canonical sort, so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import PGElement
from .kernels import GramMatrix, OperatorOnBH, TensorElement
from .scalars import GaussianRational, Scalar

_LATEX_VARS = {
    "th": "\\theta",
    "eta": "\\eta",
    "rho": "\\rho",
    "zeta": "\\zeta",
}


# -- coefficients -----------------------------------------------------------------


def _gaussian_body(c: GaussianRational) -> tuple[bool, str, bool]:
    """(negated, body, body_is_sum) with a non-negative leading part."""
    re, im = c.re, c.im
    if im == 0:
        return re < 0, str(abs(re)), False
    if re == 0:
        mag = abs(im)
        return im < 0, "i" if mag == 1 else f"{mag}i", False
    neg = re < 0
    if neg:
        re, im = -re, -im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    ipart = "i" if mag == 1 else f"{mag}i"
    return neg, f"{re}{sign}{ipart}", True


def _monomial_symbols(key, ring) -> list[str]:
    parts = []
    if ring.key_q(key):
        e = ring.key_q(key)
        parts.append("q" if e == 1 else f"q^{e}")
    if ring.key_qb(key):
        e = ring.key_qb(key)
        parts.append("qb" if e == 1 else f"qb^{e}")
    for n, e in enumerate(ring.key_w(key)):
        if e:
            parts.append(f"w{n}" if e == 1 else f"w{n}^{e}")
    for n, e in enumerate(ring.key_u(key)):
        if e:
            parts.append(f"u{n}" if e == 1 else f"u{n}^{e}")
    return parts


def _scalar_term_text(key, c, ring, gens: str = "") -> tuple[bool, str]:
    neg, body, is_sum = _gaussian_body(c)
    parts = _monomial_symbols(key, ring)
    if gens:
        parts.append(gens)
    if not parts:
        return neg, body
    if body == "1" and not is_sum:
        return neg, "*".join(parts)
    if is_sum:
        body = f"({body})"
    return neg, "*".join([body] + parts)


def _join_signed(pieces: list[tuple[bool, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def scalar_text(s: Scalar) -> str:
    pieces = [
        _scalar_term_text(key, c, s.ring) for key, c in s.iter_terms()
    ]
    return _join_signed(pieces)


def _gen_text(var: str, i: int, j: int) -> str:
    parts = []
    if i:
        parts.append(var if i == 1 else f"{var}^{i}")
    if j:
        parts.append(f"{var}b" if j == 1 else f"{var}b^{j}")
    return "*".join(parts)


def pg_text(f: PGElement) -> str:
    pieces = []
    var = f.alg.var
    ring = f.alg.ring
    for i, j, c in f.terms():
        gens = _gen_text(var, i, j)
        terms = list(c.iter_terms())
        if len(terms) == 1:
            pieces.append(_scalar_term_text(terms[0][0], terms[0][1], ring, gens))
        elif gens:
            pieces.append((False, f"({scalar_text(c)})*{gens}"))
        else:
            pieces.append((False, f"({scalar_text(c)})"))
    return _join_signed(pieces)


def tensor_text(t: TensorElement) -> str:
    pieces = []
    for ((a, b), (c, d)), v in t.iter_entries():
        left = _gen_text(t.left.var, a, b) or "1"
        right = _gen_text(t.right.var, c, d) or "1"
        coeff = scalar_text(v)
        if len(v._terms) > 1:
            coeff = f"({coeff})"
        pieces.append(f"{coeff} {left} (x) {right}")
    return "\n".join(pieces) if pieces else "0"


def gram_text(g: GramMatrix) -> str:
    head = "basis: " + ", ".join(
        _gen_text("th", i, j) or "1" for i, j in g.basis
    )
    lines = [head]
    for row in g.rows:
        lines.append("[" + ", ".join(scalar_text(c) for c in row) + "]")
    return "\n".join(lines)


def operator_text(op: OperatorOnBH) -> str:
    return "\n".join(
        "[" + ", ".join(scalar_text(c) for c in row) + "]" for row in op.rows
    )


# -- LaTeX ---------------------------------------------------------------------------


def _frac_latex(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    return f"{sign}\\frac{{{abs(f.numerator)}}}{{{abs(f.denominator)}}}"


def _gaussian_latex(c: GaussianRational) -> tuple[bool, str, bool]:
    re, im = c.re, c.im
    if im == 0:
        return re < 0, _frac_latex(abs(re)), False
    if re == 0:
        mag = abs(im)
        return im < 0, "i" if mag == 1 else _frac_latex(mag) + " i", False
    neg = re < 0
    if neg:
        re, im = -re, -im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    ipart = "i" if mag == 1 else _frac_latex(mag) + " i"
    return neg, f"{_frac_latex(re)} {sign} {ipart}", True


def _half_power_latex(base: str, whole: int, half: int) -> str:
    """base^(whole + half/2), written with a single exponent."""
    num = 2 * whole + half
    if num == 0:
        return ""
    if num % 2 == 0:
        e = num // 2
        return base if e == 1 else f"{base}^{{{e}}}"
    return f"{base}^{{{num}/2}}"


def _monomial_latex(key, ring) -> list[str]:
    parts = []
    e = ring.key_q(key)
    if e:
        parts.append("q" if e == 1 else f"q^{{{e}}}")
    e = ring.key_qb(key)
    if e:
        parts.append("\\bar{q}" if e == 1 else f"\\bar{{q}}^{{{e}}}")
    ws = ring.key_w(key)
    us = ring.key_u(key)
    for n in range(ring.l):
        piece = _half_power_latex(f"w_{{{n}}}", ws[n], us[n])
        if piece:
            parts.append(piece)
    return parts


def scalar_latex(s: Scalar) -> str:
    pieces = []
    for key, c in s.iter_terms():
        neg, body, is_sum = _gaussian_latex(c)
        syms = _monomial_latex(key, s.ring)
        if syms:
            if body == "1" and not is_sum:
                body = ""
            elif is_sum:
                body = f"\\left({body}\\right)"
            body = " ".join(([body] if body else []) + syms)
        pieces.append((neg, body))
    return _join_signed(pieces)


def _gen_latex(var: str, i: int, j: int) -> str:
    sym = _LATEX_VARS.get(var, f"\\{var}")
    parts = []
    if i:
        parts.append(sym if i == 1 else f"{sym}^{{{i}}}")
    if j:
        parts.append(
            f"\\overline{{{sym}}}" if j == 1 else f"\\overline{{{sym}}}{{}}^{{{j}}}"
        )
    return " ".join(parts)


def pg_latex(f: PGElement) -> str:
    pieces = []
    for i, j, c in f.terms():
        gens = _gen_latex(f.alg.var, i, j)
        terms = list(c.iter_terms())
        if len(terms) == 1:
            key, coeff = terms[0]
            neg, body, is_sum = _gaussian_latex(coeff)
            syms = _monomial_latex(key, f.alg.ring)
            if gens:
                syms.append(gens)
            if syms:
                if body == "1" and not is_sum:
                    body = ""
                elif is_sum:
                    body = f"\\left({body}\\right)"
            bits = ([body] if body else []) + syms
            pieces.append((neg, " ".join(bits) if bits else "1"))
        else:
            inner = scalar_latex(c)
            body = f"\\left({inner}\\right)"
            pieces.append((False, f"{body} {gens}" if gens else body))
    return _join_signed(pieces)


def tensor_latex(t: TensorElement) -> str:
    pieces = []
    for ((a, b), (c, d)), v in t.iter_entries():
        left = _gen_latex(t.left.var, a, b) or "1"
        right = _gen_latex(t.right.var, c, d) or "1"
        coeff = scalar_latex(v)
        neg = False
        if len(v._terms) > 1:
            coeff = f"\\left({coeff}\\right)"
        else:
            if coeff.startswith("-"):
                neg, coeff = True, coeff[1:]
            if coeff == "1":
                coeff = ""
        body = f"{coeff} {left} \\otimes {right}".strip()
        pieces.append((neg, body))
    return _join_signed(pieces)


def gram_latex(g: GramMatrix) -> str:
    rows = " \\\\\n".join(
        " & ".join(scalar_latex(c) for c in row) for row in g.rows
    )
    return "\\begin{pmatrix}\n" + rows + "\n\\end{pmatrix}"


def operator_latex(op: OperatorOnBH) -> str:
    rows = " \\\\\n".join(
        " & ".join(scalar_latex(c) for c in row) for row in op.rows
    )
    return "\\begin{pmatrix}\n" + rows + "\n\\end{pmatrix}"


# -- JSON -----------------------------------------------------------------------------


def scalar_json_obj(s: Scalar) -> list:
    out = []
    ring = s.ring
    for key, c in s.iter_terms():
        exp = {
            "q": ring.key_q(key),
            "qb": ring.key_qb(key),
            "w": list(ring.key_w(key)),
        }
        us = ring.key_u(key)
        if any(us):
            exp["u"] = list(us)
        out.append(
            {"coeff": {"re": str(c.re), "im": str(c.im)}, "exp": exp}
        )
    return out


def pg_json_obj(f: PGElement) -> dict:
    return {
        "l": f.alg.l,
        "q_mode": f.alg.ring.q_mode,
        "var": f.alg.var,
        "terms": [
            {"i": i, "j": j, "coeff": scalar_json_obj(c)} for i, j, c in f.terms()
        ],
    }


def tensor_json_obj(t: TensorElement) -> dict:
    return {
        "l": t.l,
        "left_var": t.left.var,
        "right_var": t.right.var,
        "terms": [
            {"left": [a, b], "right": [c, d], "coeff": scalar_json_obj(v)}
            for ((a, b), (c, d)), v in t.iter_entries()
        ],
    }


def gram_json_obj(g: GramMatrix) -> dict:
    return {
        "l": g.spec.l,
        "basis": [[i, j] for i, j in g.basis],
        "rows": [[scalar_json_obj(c) for c in row] for row in g.rows],
    }


def operator_json_obj(op: OperatorOnBH) -> dict:
    return {"l": op.l, "rows": [[scalar_json_obj(c) for c in row] for row in op.rows]}


# -- dispatch ------------------------------------------------------------------------


def print_text(x) -> str:
    if isinstance(x, Scalar):
        return scalar_text(x)
    if isinstance(x, PGElement):
        return pg_text(x)
    if isinstance(x, TensorElement):
        return tensor_text(x)
    if isinstance(x, GramMatrix):
        return gram_text(x)
    if isinstance(x, OperatorOnBH):
        return operator_text(x)
    raise TypeError(f"cannot render {type(x).__name__}")


def print_latex(x) -> str:
    if isinstance(x, Scalar):
        return scalar_latex(x)
    if isinstance(x, PGElement):
        return pg_latex(x)
    if isinstance(x, TensorElement):
        return tensor_latex(x)
    if isinstance(x, GramMatrix):
        return gram_latex(x)
    if isinstance(x, OperatorOnBH):
        return operator_latex(x)
    raise TypeError(f"cannot render {type(x).__name__}")


def print_json(x) -> str:
    if isinstance(x, Scalar):
        obj = scalar_json_obj(x)
    elif isinstance(x, PGElement):
        obj = pg_json_obj(x)
    elif isinstance(x, TensorElement):
        obj = tensor_json_obj(x)
    elif isinstance(x, GramMatrix):
        obj = gram_json_obj(x)
    elif isinstance(x, OperatorOnBH):
        obj = operator_json_obj(x)
    else:
        raise TypeError(f"cannot render {type(x).__name__}")
    return json.dumps(obj)


def render(x, fmt: str) -> str:
    if fmt == "text":
        return print_text(x)
    if fmt == "latex":
        return print_latex(x)
    if fmt == "json":
        return print_json(x)
    raise ValueError(f"unknown format {fmt!r}")
