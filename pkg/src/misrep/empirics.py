"""From district election returns to implied proportionality weights.

The pipeline reads candidate-level returns, cleans them (fusion tickets,
blank and scatter lines), computes each district's two-party Republican
share, imputes it from a presidential baseline where the House race carries
no two-party information, drops state-years with too few districts or too
many non-major races, and finally reports the switching weights of the
state's seat schedule: the weights at which an observed FPTP seat total
would stop being misrepresentation-minimizing.

Party A is the Republican party throughout.

Input layout
------------
``input_dir/*.csv``
    ``state,year,district,candidate,party,votes,vote_class,fusion_group``.
    ``vote_class`` is ``regular`` or ``blank_void_scatter``; lines sharing a
    nonempty ``fusion_group`` are one candidate's endorsements.
``baseline_dir/*.csv`` (except ``maps.csv``)
    ``state,map_id,district,pres_year,a_share``.
``baseline_dir/maps.csv`` (optional)
    ``state,year,map_id``: which map a House election used. Without it
    every state is assumed to have a single map.
"""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from misrep.core import INFINITY, Profile, as_fraction, fptp_seats, pr_seats, share
from misrep.errors import DataError, DomainError
from misrep.io import format_number
from misrep.optimizer import seat_schedule

RACE_HEADER = ('state', 'year', 'district', 'candidate', 'party', 'votes',
               'vote_class', 'fusion_group')
BASELINE_HEADER = ('state', 'map_id', 'district', 'pres_year', 'a_share')
MAPS_HEADER = ('state', 'year', 'map_id')
REPORT_HEADER = (
    'state', 'year', 'n', 'a', 's_f', 's_pr', 'overrep_party',
    'w_first', 'w_second', 'w_third', 'w_pr', 'avg3', 'avg3_count',
    'w_first_capped', 'w_second_capped', 'w_third_capped', 'w_pr_capped',
    'avg3_capped', 'missing_point', 'imputed_districts',
)

DEFAULT_CAP = Fraction(3, 5)
DEFAULT_MIN_DISTRICTS = 8
DEFAULT_NONMAJOR_MAX_FRAC = Fraction(1, 4)

_MAJOR_LABELS = {
    'republican': 'R', 'rep': 'R', 'gop': 'R', 'r': 'R',
    'democrat': 'D', 'democratic': 'D', 'dem': 'D', 'd': 'D',
    'democratic-farmer-labor': 'D', 'dfl': 'D',
}
REGULAR = 'regular'
BLANK = 'blank_void_scatter'


def major_party(label: str) -> Optional[str]:
    """``'R'`` or ``'D'`` for a major-party label, else ``None``."""
    return _MAJOR_LABELS.get(label.strip().lower())


@dataclass(frozen=True)
class RaceRecord:
    state: str
    year: int
    district: str
    candidate: str
    party: str
    votes: int
    vote_class: str = REGULAR
    fusion_group: str = ''

    @property
    def major(self) -> Optional[str]:
        return major_party(self.party)


@dataclass(frozen=True)
class RowError:
    source: str
    line: int
    message: str


def _parse_race_row(row: dict) -> RaceRecord:
    votes = int(row['votes'])
    if votes < 0:
        raise ValueError(f'negative votes {votes}')
    vote_class = row['vote_class'].strip() or REGULAR
    if vote_class not in (REGULAR, BLANK):
        raise ValueError(f'unknown vote_class {vote_class!r}')
    state = row['state'].strip()
    district = row['district'].strip()
    if not state or not district:
        raise ValueError('state and district are required')
    return RaceRecord(
        state, int(row['year']), district, row['candidate'].strip(),
        row['party'].strip(), votes, vote_class,
        (row.get('fusion_group') or '').strip(),
    )


def _check_header(reader: csv.DictReader, expected: Sequence[str], path) -> None:
    if tuple(reader.fieldnames or ()) != tuple(expected):
        raise DataError(
            f'{path}: header {reader.fieldnames} differs from {",".join(expected)}')


def read_races(paths: Iterable[Path]) -> Tuple[List[RaceRecord], List[RowError]]:
    """Parse race files; bad or duplicated rows are logged and skipped.

    A duplicate is a second row with the same state, year, district,
    candidate and party (a fused candidate legitimately appears once per
    party line).
    """
    records, errors, seen = [], [], set()
    for path in paths:
        with open(path, newline='', encoding='utf-8') as fh:
            reader = csv.DictReader(fh)
            _check_header(reader, RACE_HEADER, path)
            for row in reader:
                line = reader.line_num
                try:
                    rec = _parse_race_row(row)
                except (ValueError, KeyError, TypeError) as exc:
                    errors.append(RowError(str(path), line, f'unreadable row: {exc}'))
                    continue
                key = (rec.state, rec.year, rec.district, rec.candidate, rec.party)
                if key in seen:
                    errors.append(RowError(
                        str(path), line,
                        'duplicate row for {} {} district {} candidate {!r}'.format(
                            rec.state, rec.year, rec.district, rec.candidate)))
                    continue
                seen.add(key)
                records.append(rec)
    return records, errors


def clean_races(records: Iterable[RaceRecord]) -> List[RaceRecord]:
    """Drop blank/void/scatter lines and collapse fusion groups.

    A fusion group with one major-party line becomes a single line for that
    party carrying the group's total votes. A group with no major line is
    summed under its first line's party. Two different major parties in
    one group is malformed.
    """
    out: List[RaceRecord] = []
    groups: Dict[tuple, List[RaceRecord]] = defaultdict(list)
    for rec in records:
        if rec.vote_class == BLANK:
            continue
        if rec.fusion_group:
            groups[(rec.state, rec.year, rec.district, rec.fusion_group)].append(rec)
        else:
            out.append(rec)
    for (state, year, district, group), lines in groups.items():
        majors = {rec.major for rec in lines if rec.major}
        if len(majors) > 1:
            raise DataError(
                f'fusion group {group!r} in {state} {year} district {district} '
                'lists both major parties')
        lead = next((rec for rec in lines if rec.major), lines[0])
        out.append(RaceRecord(
            state, year, district, lead.candidate, lead.party,
            sum(rec.votes for rec in lines), REGULAR, ''))
    out.sort(key=lambda r: (r.state, r.year, _district_key(r.district), r.candidate, r.party))
    return out


def _district_key(district: str):
    return (0, int(district), '') if district.isdigit() else (1, 0, district)


UNCONTESTED = 'uncontested'
NONMAJOR = 'nonmajor_dominated'
OBSERVED = 'observed'
IMPUTED = 'imputed_presidential'


@dataclass(frozen=True)
class DistrictShare:
    state: str
    year: int
    district: str
    a_share: Fraction
    source: str
    flags: Tuple[str, ...] = ()


class Baseline:
    """Presidential district shares keyed by map, with the map of each election."""

    def __init__(self, rows: Iterable[Tuple[str, str, str, int, Fraction]] = (),
                 maps: Optional[Dict[Tuple[str, int], str]] = None):
        self.shares: Dict[Tuple[str, str, str], Dict[int, Fraction]] = defaultdict(dict)
        self.maps_by_state: Dict[str, set] = defaultdict(set)
        for state, map_id, district, pres_year, a_share in rows:
            self.shares[(state, map_id, district)][pres_year] = a_share
            self.maps_by_state[state].add(map_id)
        self.maps = dict(maps or {})

    @classmethod
    def from_dir(cls, baseline_dir) -> Tuple['Baseline', List[RowError]]:
        rows, maps, errors = [], {}, []
        root = Path(baseline_dir)
        for path in sorted(root.glob('*.csv')):
            with open(path, newline='', encoding='utf-8') as fh:
                reader = csv.DictReader(fh)
                if path.name == 'maps.csv':
                    _check_header(reader, MAPS_HEADER, path)
                    for row in reader:
                        try:
                            maps[(row['state'].strip(), int(row['year']))] = row['map_id'].strip()
                        except (ValueError, KeyError) as exc:
                            errors.append(RowError(str(path), reader.line_num, str(exc)))
                    continue
                _check_header(reader, BASELINE_HEADER, path)
                for row in reader:
                    try:
                        rows.append((
                            row['state'].strip(), row['map_id'].strip(),
                            row['district'].strip(), int(row['pres_year']),
                            share(row['a_share']),
                        ))
                    except (ValueError, KeyError) as exc:
                        errors.append(RowError(str(path), reader.line_num, str(exc)))
        return cls(rows, maps), errors

    def map_for(self, state: str, year: int) -> Optional[str]:
        if (state, year) in self.maps:
            return self.maps[(state, year)]
        known = self.maps_by_state.get(state, set())
        return next(iter(known)) if len(known) == 1 else None

    def impute(self, state: str, year: int, district: str) -> Optional[Fraction]:
        """Share from the nearest presidential year on the same map.

        Two equally near years are averaged; ``None`` if nothing applies.
        """
        map_id = self.map_for(state, year)
        if map_id is None:
            return None
        by_year = self.shares.get((state, map_id, district))
        if not by_year:
            return None
        nearest = min(abs(y - year) for y in by_year)
        picks = [s for y, s in by_year.items() if abs(y - year) == nearest]
        return sum(picks, Fraction(0)) / len(picks)


class MissingBaseline(DataError):
    """A district needs imputation but the baseline has no share for it."""


def classify_districts(cleaned: Iterable[RaceRecord], baseline: Baseline) -> List[DistrictShare]:
    """Two-party Republican share per district, imputed where necessary.

    ``uncontested`` means exactly one major party is on the ballot;
    ``nonmajor_dominated`` means no major party is on the ballot or a
    non-major candidate won. Both take the presidential baseline share.
    Raises :class:`MissingBaseline` if that share is unavailable.
    """
    by_district: Dict[tuple, List[RaceRecord]] = defaultdict(list)
    for rec in cleaned:
        by_district[(rec.state, rec.year, rec.district)].append(rec)
    out = []
    for (state, year, district), lines in sorted(
            by_district.items(), key=lambda kv: (kv[0][0], kv[0][1], _district_key(kv[0][2]))):
        votes = {'R': 0, 'D': 0}
        present = set()
        for rec in lines:
            if rec.major:
                votes[rec.major] += rec.votes
                present.add(rec.major)
        winner = max(lines, key=lambda r: r.votes)
        flags = []
        if len(present) == 1:
            flags.append(UNCONTESTED)
        if not present or winner.major is None:
            flags.append(NONMAJOR)
        if flags:
            imputed = baseline.impute(state, year, district)
            if imputed is None:
                raise MissingBaseline(
                    f'no presidential baseline for {state} {year} district {district}')
            out.append(DistrictShare(state, year, district, imputed, IMPUTED, tuple(flags)))
            continue
        two_party = votes['R'] + votes['D']
        if two_party == 0:
            raise DataError(f'{state} {year} district {district} has no two-party votes')
        out.append(DistrictShare(
            state, year, district, Fraction(votes['R'], two_party), OBSERVED))
    return out


@dataclass(frozen=True)
class FilterDecision:
    keep: bool
    reason: str = ''

    def __bool__(self) -> bool:
        return self.keep


def filter_state_year(
    districts: Sequence[DistrictShare],
    min_districts: int = DEFAULT_MIN_DISTRICTS,
    nonmajor_max_frac=DEFAULT_NONMAJOR_MAX_FRAC,
) -> FilterDecision:
    """Exclude small delegations and those with many non-major races.

    The non-major bound is strict: exactly a quarter is kept.
    """
    n = len(districts)
    if n < min_districts:
        return FilterDecision(False, f'{n} districts, fewer than {min_districts}')
    nonmajor = sum(1 for d in districts if NONMAJOR in d.flags)
    frac = Fraction(nonmajor, n)
    if frac > as_fraction(nonmajor_max_frac):
        return FilterDecision(
            False, f'{nonmajor} of {n} districts non-major dominated, above {nonmajor_max_frac}')
    return FilterDecision(True)


@dataclass(frozen=True)
class StateYearReport:
    """Switching weights of one state-year's seat schedule.

    ``w_first`` to ``w_third`` are the first three breakpoints of the
    schedule (``None`` where the schedule is shorter) and ``w_pr`` the last.
    ``avg3`` averages whichever of the first three exist and ``avg3_count``
    says how many did. When FPTP already gives the proportional seat total
    there are no breakpoints and ``missing_point`` is set.
    """

    state: str
    year: int
    n: int
    a: Fraction
    s_f: int
    s_pr: int
    overrep_party: str
    w_first: Optional[object]
    w_second: Optional[object]
    w_third: Optional[object]
    w_pr: Optional[object]
    avg3: Optional[object]
    avg3_count: int
    cap: Fraction = DEFAULT_CAP
    imputed_districts: int = 0

    @property
    def missing_point(self) -> bool:
        return self.s_f == self.s_pr

    def capped(self, value):
        return None if value is None else min(value, self.cap)

    def row(self, decimal_digits: Optional[int] = None) -> List[str]:
        fmt = lambda v: format_number(v, decimal_digits)
        ws = (self.w_first, self.w_second, self.w_third, self.w_pr, self.avg3)
        return [
            self.state, str(self.year), str(self.n), fmt(self.a),
            str(self.s_f), str(self.s_pr), self.overrep_party,
            *[fmt(w) for w in ws[:4]], fmt(self.avg3), str(self.avg3_count),
            *[fmt(self.capped(w)) for w in ws],
            'true' if self.missing_point else 'false',
            str(self.imputed_districts),
        ]


def report_from_profile(state: str, year: int, profile: Profile,
                        cap=DEFAULT_CAP, imputed: int = 0) -> StateYearReport:
    """Build a report from a profile of Republican shares.

    The schedule's weights do not depend on which party is called A, so
    the overrepresented party's view needs no separate computation.
    """
    s_f, s_pr, a = fptp_seats(profile), pr_seats(profile), profile.aggregate
    overrep = 'R' if s_f > a else ('D' if s_f < a else '')
    bps = list(seat_schedule(profile).breakpoints)
    first3 = bps[:3]
    padded = first3 + [None] * (3 - len(first3))
    finite = [w for w in first3 if w != INFINITY]
    if not first3:
        avg3 = None
    elif len(finite) < len(first3):
        avg3 = INFINITY
    else:
        avg3 = sum(finite, Fraction(0)) / len(finite)
    return StateYearReport(
        state, year, profile.n, a, s_f, s_pr, overrep,
        padded[0], padded[1], padded[2], bps[-1] if bps else None,
        avg3, len(first3), as_fraction(cap), imputed,
    )


def implied_weights(districts: Sequence[DistrictShare], cap=DEFAULT_CAP) -> StateYearReport:
    if not districts:
        raise DomainError('no districts')
    state, year = districts[0].state, districts[0].year
    ordered = sorted(districts, key=lambda d: _district_key(d.district))
    profile = Profile(d.a_share for d in ordered)
    imputed = sum(1 for d in districts if d.source == IMPUTED)
    return report_from_profile(state, year, profile, cap, imputed)


@dataclass
class RunSummary:
    reports: List[StateYearReport] = field(default_factory=list)
    exclusions: List[dict] = field(default_factory=list)
    errors: List[dict] = field(default_factory=list)

    @property
    def skipped_rows(self) -> int:
        return sum(1 for e in self.errors if e.get('line') is not None)


def exclusions_path(output_path) -> Path:
    out = Path(output_path)
    return out.with_name(out.stem + '.exclusions.json')


def batch_run(
    input_dir, baseline_dir, output_path,
    cap=DEFAULT_CAP,
    min_districts: int = DEFAULT_MIN_DISTRICTS,
    nonmajor_max_frac=DEFAULT_NONMAJOR_MAX_FRAC,
    decimal_digits: Optional[int] = None,
) -> RunSummary:
    """Process every state-year and write the report and exclusions log.

    The report CSV at ``output_path`` holds one row per kept state-year,
    ordered by state then year. Exclusions and row errors go to a JSON file
    beside it (``<stem>.exclusions.json``). Output is byte-for-byte
    reproducible.
    """
    summary = RunSummary()
    race_files = sorted(Path(input_dir).glob('*.csv'))
    records, row_errors = read_races(race_files)
    baseline, base_errors = Baseline.from_dir(baseline_dir) if baseline_dir else (Baseline(), [])
    for err in row_errors + base_errors:
        summary.errors.append({'source': Path(err.source).name, 'line': err.line,
                               'message': err.message})

    by_state_year: Dict[Tuple[str, int], List[RaceRecord]] = defaultdict(list)
    for rec in records:
        by_state_year[(rec.state, rec.year)].append(rec)

    for state, year in sorted(by_state_year):
        try:
            districts = classify_districts(clean_races(by_state_year[(state, year)]), baseline)
        except MissingBaseline as exc:
            summary.exclusions.append({'state': state, 'year': year, 'reason': str(exc)})
            continue
        except DataError as exc:
            summary.errors.append({'source': f'{state} {year}', 'line': None,
                                   'message': str(exc)})
            continue
        decision = filter_state_year(districts, min_districts, nonmajor_max_frac)
        if not decision:
            summary.exclusions.append({'state': state, 'year': year, 'reason': decision.reason})
            continue
        summary.reports.append(implied_weights(districts, cap))

    out = Path(output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, 'w', newline='', encoding='utf-8') as fh:
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(REPORT_HEADER)
        for rep in summary.reports:
            writer.writerow(rep.row(decimal_digits))
    log = {
        'exclusions': summary.exclusions,
        'errors': summary.errors,
        'summary': {
            'reports': len(summary.reports),
            'excluded': len(summary.exclusions),
            'errors': len(summary.errors),
            'skipped_rows': summary.skipped_rows,
        },
    }
    exclusions_path(out).write_text(json.dumps(log, indent=2, sort_keys=True) + '\n',
                                    encoding='utf-8')
    return summary
