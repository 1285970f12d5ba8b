"""Reading profiles and writing exact numbers.

Profile files hold one share per line (``0.485`` or ``97/200``). A file
whose lines are all two comma-separated integers is read as
``a_votes,two_party_total`` counts instead. Blank lines and ``#`` comments
are ignored.

Numbers are written as ``num/den`` (or a bare integer) so that every value
re-parses to the same fraction; infinite weights are written ``inf``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from misrep.core import INFINITY, Profile, as_fraction
from misrep.errors import DataError, DomainError


def parse_profile_text(text: str) -> Profile:
    lines = []
    for raw in text.splitlines():
        line = raw.split('#', 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise DataError('profile is empty')
    try:
        if all(',' in line for line in lines):
            rows = []
            for line in lines:
                votes, total = (int(x) for x in line.split(','))
                rows.append((votes, total))
            return Profile.from_counts(rows)
        return Profile(lines)
    except (ValueError, DomainError) as exc:
        raise DataError(f'bad profile line: {exc}') from exc


def read_profile(path: Union[str, Path]) -> Profile:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise DataError(f'cannot read {path}: {exc}') from exc
    return parse_profile_text(text)


def format_profile(profile: Profile) -> str:
    return ''.join(f'{format_number(s)}\n' for s in profile.shares)


def format_number(value, decimal_digits: Optional[int] = None) -> str:
    """Exact text for a fraction, or a rounded decimal if digits are given."""
    if value is None:
        return ''
    if isinstance(value, float) and math.isinf(value):
        return 'inf'
    value = Fraction(value)
    if decimal_digits is not None:
        scaled = round(value * 10 ** decimal_digits)
        sign = '-' if scaled < 0 else ''
        whole, rest = divmod(abs(scaled), 10 ** decimal_digits)
        if decimal_digits == 0:
            return f'{sign}{whole}'
        return f'{sign}{whole}.{rest:0{decimal_digits}d}'
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def parse_number(text: str):
    """Inverse of :func:`format_number` in exact mode; empty text is ``None``."""
    text = text.strip()
    if not text:
        return None
    if text.lower() in ('inf', 'infinity'):
        return INFINITY
    return as_fraction(text)
