"""Parser for textual product-operator expressions.

Grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := scalar ('*' atom)* | atom ('*' atom)*
    scalar := decimal | 'i' | decimal 'i' | '(' re ('+'|'-') im 'i' ')'
    atom   := 'I' index axis | 'S' index axis | 'Id'
    axis   := 'x' | 'y' | 'z' | 'p' | 'm'

Examples: ``I1z + I2z``, ``2*I1x*I2y``, ``i*I1y``, ``(0.5-1i)*S2z``.
The ``*`` between atoms is mandatory so multi-digit site indices stay
unambiguous.  Atoms on distinct sites commute; the same site may appear
at most once per term.  ``S`` and ``I`` both denote the site-appropriate
spin matrices (for spins 1/2 they coincide with the Pauli convention
I_a = sigma_a / 2); ``p``/``m`` are the raising and lowering
combinations I_x + i I_y and I_x - i I_y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .angular import spin_matrices
from .errors import FormatError
from .spincore import Operator, SpinSystem

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>Id|[IS]\d+[xyzpm])"
    r"|(?P<imag>i)"
    r"|(?P<op>[+\-*()])"
    r")"
)


@dataclass(frozen=True)
class Atom:
    """One single-site factor: kind 'I'/'S', site index, axis letter."""

    kind: str
    site: int
    axis: str


@dataclass(frozen=True)
class Term:
    """scalar * product of atoms (atoms sorted by site; may be empty)."""

    scalar: complex
    atoms: tuple


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        while self.pos < len(text):
            match = _TOKEN.match(text, self.pos)
            if not match or match.end() == match.start():
                at = self.pos
                while at < len(text) and text[at].isspace():
                    at += 1
                raise FormatError(
                    f"syntax error at position {at}: "
                    f"unexpected character {text[at]!r}"
                )
            if match.lastgroup is not None:
                self.tokens.append(
                    (match.lastgroup, match.group(match.lastgroup), match.start(match.lastgroup))
                )
            self.pos = match.end()
        self.index = 0

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.index += 1
        return tok


def parse_expression(text):
    """Parse to a list of :class:`Term` without evaluating.

    Raises :class:`FormatError` with a character position on any input
    outside the grammar, including a repeated site within one term.
    """
    if not isinstance(text, str) or not text.strip():
        raise FormatError("empty operator expression")
    tz = _Tokenizer(text)
    terms = []
    sign = 1.0
    kind, value, pos = tz.peek()
    if kind == "op" and value in "+-":
        tz.next()
        sign = -1.0 if value == "-" else 1.0
    while True:
        terms.append(_parse_term(tz, sign))
        kind, value, pos = tz.next()
        if kind == "end":
            return terms
        if kind != "op" or value not in "+-":
            raise FormatError(
                f"syntax error at position {pos}: expected '+' or '-', got {value!r}"
            )
        sign = -1.0 if value == "-" else 1.0


def _parse_term(tz, sign):
    scalar = complex(sign)
    atoms = []
    kind, value, pos = tz.peek()
    if kind == "number" or kind == "imag" or (kind == "op" and value == "("):
        scalar *= _parse_scalar(tz)
        kind, value, pos = tz.peek()
        if not (kind == "op" and value == "*"):
            if kind == "name":
                raise FormatError(
                    f"syntax error at position {pos}: missing '*' before {value!r}"
                )
            return Term(scalar, ())
        # fall through to atom list, consuming the '*'
        tz.next()
        atoms.append(_parse_atom(tz))
    elif kind == "name":
        atoms.append(_parse_atom(tz))
    else:
        raise FormatError(
            f"syntax error at position {pos}: expected a scalar or operator atom"
        )
    while True:
        kind, value, pos = tz.peek()
        if kind == "op" and value == "*":
            tz.next()
            atoms.append(_parse_atom(tz))
        else:
            break
    seen = {}
    for a in atoms:
        if a is IDENTITY_ATOM:
            continue
        if a.site in seen:
            raise FormatError(
                f"site {a.site} appears more than once in one product term"
            )
        seen[a.site] = a
    return Term(scalar, tuple(sorted(seen.values(), key=lambda a: a.site)))


def _parse_scalar(tz):
    kind, value, pos = tz.next()
    if kind == "imag":
        return 1j
    if kind == "number":
        x = float(value)
        nkind, nvalue, _np = tz.peek()
        if nkind == "imag":
            tz.next()
            return x * 1j
        return complex(x)
    if kind == "op" and value == "(":
        re_part = _signed_decimal(tz)
        okind, ovalue, opos = tz.next()
        if okind != "op" or ovalue not in "+-":
            raise FormatError(
                f"syntax error at position {opos}: expected '+' or '-' in complex scalar"
            )
        im_part = _signed_decimal(tz)
        if ovalue == "-":
            im_part = -im_part
        ikind, _ivalue, ipos = tz.next()
        if ikind != "imag":
            raise FormatError(
                f"syntax error at position {ipos}: expected 'i' in complex scalar"
            )
        ckind, cvalue, cpos = tz.next()
        if ckind != "op" or cvalue != ")":
            raise FormatError(f"syntax error at position {cpos}: expected ')'")
        return complex(re_part, im_part)
    raise FormatError(f"syntax error at position {pos}: expected a scalar")


def _signed_decimal(tz):
    kind, value, pos = tz.peek()
    sign = 1.0
    if kind == "op" and value in "+-":
        tz.next()
        sign = -1.0 if value == "-" else 1.0
        kind, value, pos = tz.peek()
    if kind != "number":
        raise FormatError(f"syntax error at position {pos}: expected a number")
    tz.next()
    return sign * float(value)


IDENTITY_ATOM = Atom(kind="Id", site=0, axis="")


def _parse_atom(tz):
    kind, value, pos = tz.next()
    if kind != "name":
        raise FormatError(f"syntax error at position {pos}: expected an operator atom")
    if value == "Id":
        return IDENTITY_ATOM
    return Atom(kind=value[0], site=int(value[1:-1]), axis=value[-1])


def pretty(terms) -> str:
    """Canonical text for a term list; re-parses to the same operator."""
    parts = []
    for i, term in enumerate(terms):
        s = term.scalar
        body = "*".join(f"{a.kind}{a.site}{a.axis}" for a in term.atoms)
        negative = s.real < 0 or (s.real == 0 and s.imag < 0)
        mag = -s if negative else s
        if i == 0:
            prefix = "-" if negative else ""
        else:
            prefix = " - " if negative else " + "
        if mag == 1 and body:
            scalar_text = ""
        elif mag.imag == 0:
            scalar_text = _fmt(mag.real)
        elif mag.real == 0:
            scalar_text = "i" if mag.imag == 1 else f"{_fmt(mag.imag)}i"
        else:
            im = mag.imag
            op = "-" if im < 0 else "+"
            scalar_text = f"({_fmt(mag.real)}{op}{_fmt(abs(im))}i)"
        if scalar_text and body:
            parts.append(f"{prefix}{scalar_text}*{body}")
        elif body:
            parts.append(f"{prefix}{body}")
        else:
            parts.append(f"{prefix}{scalar_text or '1'}*Id")
    return "".join(parts)


def _fmt(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _site_matrices(system: SpinSystem, site: int):
    sx, sy, sz = spin_matrices(system.spins[site - 1])
    return {
        "x": sx,
        "y": sy,
        "z": sz,
        "p": sx + 1j * sy,
        "m": sx - 1j * sy,
    }


def evaluate(terms, system: SpinSystem) -> Operator:
    """Evaluate a parsed term list on a concrete spin system."""
    n = system.n_spins
    dim = system.dim
    total = np.zeros((dim, dim), dtype=complex)
    for term in terms:
        acc = np.eye(dim, dtype=complex) * term.scalar
        for atom in term.atoms:
            if not 1 <= atom.site <= n:
                raise FormatError(
                    f"site index {atom.site} out of range 1..{n}"
                )
            mats = _site_matrices(system, atom.site)
            full = np.eye(1, dtype=complex)
            for k in range(1, n + 1):
                factor = mats[atom.axis] if k == atom.site else np.eye(system.site_dim(k))
                full = np.kron(full, factor)
            acc = acc @ full
        total += acc
    return Operator(system, total)


def parse(text, system: SpinSystem) -> Operator:
    """Parse an expression and evaluate it on the given system."""
    return evaluate(parse_expression(text), system)
