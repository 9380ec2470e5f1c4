"""Parser for the potential mini-language.

Grammar::

    potential := [sign] term ( sign term )*
    term      := rational ( "*" factor )*  |  factor ( "*" factor )*
    factor    := "x" [ "^" rational ]  |  "ln" INT "(x)" [ "^" rational ]
    rational  := ["-"] INT [ "/" INT ]  |  ["-"] DECIMAL

Whitespace is insignificant. Every text produced by :meth:`LogPoly.render`
parses back to an equal polynomial.

Example:
    >>> parse("3/4 * x^-2").render()
    '3/4 * x^-2'
    >>> parse("0").is_zero()
    True
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import pyparsing as pp

from ..algebra.iterlog import MAX_DEPTH
from ..algebra.symalg import LogMonomial, LogPoly
from ..utils.exceptions import DepthError, PotentialSyntaxError

logger = logging.getLogger(__name__)

_WHITESPACE = re.compile(r"\s+")


@dataclass(frozen=True)
class _Factor:
    depth: int | None  # None for x, k for ln_k(x)
    exponent: Fraction


def _to_rational(tokens: pp.ParseResults) -> Fraction:
    return Fraction(_WHITESPACE.sub("", tokens[0]))


def _to_factor(tokens: pp.ParseResults) -> _Factor:
    exponent = tokens.get("exponent", Fraction(1))
    depth = tokens.get("depth")
    return _Factor(None if depth is None else int(depth), exponent)


def _build_grammar() -> pp.ParserElement:
    rational = pp.Regex(r"-?\s*\d+(?:\s*/\s*\d+|\.\d+)?").set_name("rational")
    rational.set_parse_action(_to_rational)

    caret = pp.Suppress("^")
    power = pp.Opt(caret + rational("exponent"))

    x_factor = (pp.Suppress(pp.Keyword("x")) + power).set_name("x")
    ln_factor = (
        pp.Suppress(pp.Literal("ln"))
        + pp.Word(pp.nums)("depth")
        + pp.Suppress("(")
        + pp.Suppress("x")
        + pp.Suppress(")")
        + power
    ).set_name("ln<k>(x)")
    x_factor.set_parse_action(_to_factor)
    ln_factor.set_parse_action(_to_factor)
    factor = (ln_factor | x_factor).set_name("factor")

    star = pp.Suppress("*")
    term = pp.Group(
        (rational + pp.ZeroOrMore(star + factor)) | (factor + pp.ZeroOrMore(star + factor))
    ).set_name("term")

    sign = pp.one_of("+ -").set_name("sign")
    potential = pp.Opt(sign) + term + pp.ZeroOrMore(sign + term)
    return potential + pp.StringEnd().set_name("end of text")


_GRAMMAR = _build_grammar()


def _expected_tokens(exc: pp.ParseBaseException) -> list[str]:
    text = exc.msg
    if text.startswith("Expected "):
        text = text[len("Expected ") :]
    text = text.split(", found")[0].strip().strip("{}")
    return [part.strip() for part in text.split(" | ") if part.strip()]


def _term_monomial(items: pp.ParseResults, negate: bool) -> LogMonomial:
    coef = Fraction(1)
    xpow = Fraction(0)
    logexps: dict[int, Fraction] = {}
    for item in items:
        if isinstance(item, Fraction):
            coef *= item
        elif item.depth is None:
            xpow += item.exponent
        else:
            if item.depth < 1 or item.depth > MAX_DEPTH:
                raise DepthError(item.depth, max_depth=MAX_DEPTH)
            logexps[item.depth] = logexps.get(item.depth, Fraction(0)) + item.exponent
    return LogMonomial.of(-coef if negate else coef, xpow, logexps)


def parse(text: str) -> LogPoly:
    """Parse potential text into a canonical :class:`LogPoly`.

    Args:
        text: Expression in the potential grammar.

    Returns:
        The canonical polynomial.

    Raises:
        PotentialSyntaxError: If the text does not conform to the grammar; carries
            the character offset of the failure and the expected tokens.
        DepthError: If ``ln<k>`` appears with ``k = 0`` or ``k > 4``.
    """
    try:
        tokens = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        expected = _expected_tokens(e)
        raise PotentialSyntaxError(
            f"Cannot parse potential at offset {e.loc}: expected {' or '.join(expected)}",
            offset=e.loc,
            expected=expected,
            text=text,
        ) from e

    terms: list[LogMonomial] = []
    negate = False
    for token in tokens:
        if isinstance(token, str):
            negate = token == "-"
            continue
        terms.append(_term_monomial(token, negate))
        negate = False

    poly = LogPoly(terms)
    logger.debug(f"Parsed potential: {poly.render()}", extra={"terms": len(poly)})
    return poly
