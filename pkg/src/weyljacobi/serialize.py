"""Line-oriented text format for expansions.

Header::

    lattice=<tag> weight=<k> index=<t> trunc24=<N> character=<c>

followed by one record ``n24 d_1 ... d_l numerator denominator`` per term,
in sorted order.  Raw series (no weight) write ``none`` for weight, index
and character.  Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import JacobiError, ParseError, UnknownRootSystem
from .lattice import Lattice, canon
from .rootsystems import catalog, parse_tag
from .series import POINT, JacobiForm, QZSeries, pack

HEADER_KEYS = ("lattice", "weight", "index", "trunc24", "character")


def lattice_from_tag(tag: str) -> tuple:
    """(lattice, group generators, group name) for a header tag."""
    if tag == POINT.tag():
        return POINT, (), ""
    if tag.startswith("gram:"):
        try:
            rows = [[int(x) for x in r.split(",")] for r in tag[5:].split(";")]
            return Lattice.from_normalized(rows), (), ""
        except ValueError as exc:
            raise ParseError(f"bad Gram matrix in lattice tag: {exc}") from None
    try:
        parse_tag(tag)
    except UnknownRootSystem as exc:
        raise ParseError(str(exc)) from None
    R = catalog(tag)
    return R.lattice, R.weyl_generators, R.name


def _fmt(x) -> str:
    x = canon(x)
    return str(x)


def dumps(obj) -> str:
    """Serialize a JacobiForm or a raw QZSeries."""
    if isinstance(obj, JacobiForm):
        s, k, t, c = obj.series, str(obj.weight), str(obj.index), obj.character
    elif isinstance(obj, QZSeries):
        s, k, t, c = obj, "none", "none", "none"
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lines = [f"lattice={s.lattice.tag()} weight={k} index={t} trunc24={s.trunc24} character={c}"]
    for n24, d2, coeff in s.items():
        f = Fraction(coeff)
        toks = [str(n24)] + [_fmt(Fraction(x, 2)) for x in d2] + [str(f.numerator), str(f.denominator)]
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> dict:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise ParseError(f"header token without '=': {tok!r}")
        k, v = tok.split("=", 1)
        if k in fields:
            raise ParseError(f"duplicate header key {k!r}")
        fields[k] = v
    missing = [k for k in HEADER_KEYS if k not in fields]
    if missing:
        raise ParseError(f"header lacks {', '.join(missing)}")
    extra = sorted(set(fields) - set(HEADER_KEYS))
    if extra:
        raise ParseError(f"unknown header keys {', '.join(extra)}")
    return fields


def _int(tok: str, what: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: {what} {tok!r} is not an integer") from None


def loads(text: str):
    """Inverse of :func:`dumps`; returns a JacobiForm, or a QZSeries for raw data."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    h = _parse_header(lines[0][1])
    L, group, gname = lattice_from_tag(h["lattice"])
    trunc24 = _int(h["trunc24"], "trunc24", lines[0][0])
    if trunc24 <= 0:
        raise ParseError("trunc24 must be positive")
    raw = h["weight"] == "none"
    if raw != (h["index"] == "none") or raw != (h["character"] == "none"):
        raise ParseError("weight, index and character must all be given or all be 'none'")
    levels: dict = {}
    r = L.rank
    for lineno, ln in lines[1:]:
        toks = ln.split()
        if len(toks) != r + 3:
            raise ParseError(f"line {lineno}: expected {r + 3} fields, got {len(toks)}")
        n24 = _int(toks[0], "n24", lineno)
        if n24 >= trunc24:
            raise ParseError(f"line {lineno}: n24={n24} not below trunc24={trunc24}")
        try:
            d = [Fraction(x) for x in toks[1 : 1 + r]]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: bad d-vector") from None
        if any((2 * x).denominator != 1 for x in d):
            raise ParseError(f"line {lineno}: d-entries must be in (1/2)Z")
        num = _int(toks[-2], "numerator", lineno)
        den = _int(toks[-1], "denominator", lineno)
        if den <= 0:
            raise ParseError(f"line {lineno}: denominator must be positive")
        if num == 0:
            raise ParseError(f"line {lineno}: zero coefficients are not stored")
        key = pack(tuple(int(2 * x) for x in d))
        lv = levels.setdefault(n24, {})
        if key in lv:
            raise ParseError(f"line {lineno}: duplicate record")
        lv[key] = canon(Fraction(num, den))
    series = QZSeries(L, levels, trunc24)
    if raw:
        return series
    try:
        return JacobiForm(
            series,
            _int(h["weight"], "weight", 1),
            _int(h["index"], "index", 1),
            h["character"],
            group,
            gname,
        )
    except JacobiError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)
