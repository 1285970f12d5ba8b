"""Command-line front end.

Every command prints plain text or CSV/JSON to standard output. Numbers are
exact ``num/den`` unless ``--decimal-digits`` asks for rounded decimals.

Exit codes: 0 success, 2 usage error, 3 bad data or arguments outside
their domain, 4 refused as too large.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional

from misrep.core import INFINITY, agg_misrep, as_weight, dist_at, phi_at
from misrep.errors import DataError, DomainError, MisrepError, PreconditionError, ResourceError
from misrep.io import format_number, format_profile, read_profile

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_RESOURCE = 0, 2, 3, 4


def _weight(text: str):
    try:
        return as_weight(text)
    except (DomainError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _weight_list(text: str):
    return [_weight(t) for t in text.split(',') if t.strip()]


class _Out:
    def __init__(self, digits: Optional[int]):
        self.digits = digits

    def num(self, value) -> str:
        return format_number(value, self.digits)


def cmd_solve(args, out: _Out) -> int:
    from misrep.optimizer import optimal_seats, rationalizing_weights, select_seats
    from misrep.core import top_s_allocation

    p = read_profile(args.profile)
    w = args.weight
    s = select_seats(p, w)
    alloc = top_s_allocation(p, s)
    dist, agg = dist_at(p, s), agg_misrep(p, s)
    print(f'seats: {s}')
    print('optimal seat totals: ' + ','.join(str(x) for x in sorted(optimal_seats(p, w))))
    print('districts won: ' + ','.join(str(d) for d in sorted(alloc.winners)))
    print(f'dist: {out.num(dist)}')
    print(f'agg: {out.num(agg)}')
    value = phi_at(p, s, w)
    if w == INFINITY:
        print(f'phi: (agg {out.num(value[0])}, dist {out.num(value[1])})')
    else:
        print(f'phi: {out.num(value)}')
    interval = rationalizing_weights(p, s)
    hi = out.num(interval.hi)
    close = ')' if interval.hi == INFINITY else ']'
    print(f'rationalizing weights: [{out.num(interval.lo)}, {hi}{close}')
    return EXIT_OK


def cmd_schedule(args, out: _Out) -> int:
    from misrep.optimizer import optimal_cutoff, seat_schedule, transition_weights

    p = read_profile(args.profile)
    sched = seat_schedule(p)
    rows = [
        (lo, hi, s, optimal_cutoff(p, lo)) for lo, hi, s in sched.rows()
    ]
    if args.emit == 'json':
        tw = transition_weights(p)
        doc = {
            'start_seats': sched.start_seats,
            'end_seats': sched.end_seats,
            'direction': sched.direction,
            'breakpoints': [out.num(b) for b in sched.breakpoints],
            'w_floor': out.num(tw.w_floor),
            'w_ceil': out.num(tw.w_ceil) if tw.w_ceil is not None else None,
            'w_pr': out.num(tw.w_pr),
            'rows': [
                {'w_lo': out.num(lo), 'w_hi': out.num(hi), 'S': s, 'cutoff': out.num(t)}
                for lo, hi, s, t in rows
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(('w_lo', 'w_hi', 'S', 'cutoff'))
        for lo, hi, s, t in rows:
            writer.writerow((out.num(lo), out.num(hi), s, out.num(t)))
    return EXIT_OK


def cmd_frontier(args, out: _Out) -> int:
    from misrep.frontier import enumerate_points, frontier_slopes

    p = read_profile(args.profile)
    writer = csv.writer(sys.stdout, lineterminator='\n')
    if args.slopes:
        writer.writerow(('w_switch', 'slope'))
        for w, slope in frontier_slopes(p):
            writer.writerow((out.num(w), out.num(slope)))
        return EXIT_OK
    writer.writerow(('dist', 'agg', 'seat_total', 'is_top_s', 'is_pareto'))
    for pt in enumerate_points(p, full=args.full):
        writer.writerow((out.num(pt.dist), out.num(pt.agg), pt.seat_total,
                         str(pt.is_top_s).lower(), str(pt.is_pareto).lower()))
    return EXIT_OK


def cmd_axioms(args, out: _Out) -> int:
    from misrep.rules import (
        AxiomHolds,
        gerrymandering_proofness_counterexample,
        strong_monotonicity_counterexample,
    )

    w, n = args.weight, args.districts
    if args.axiom in ('monotonicity', 'both'):
        res = strong_monotonicity_counterexample(w, n)
        print('strong monotonicity:')
        if isinstance(res, AxiomHolds):
            print(f'  holds ({res.reason})')
        else:
            print('  before: ' + ', '.join(out.num(x) for x in res.before))
            print('  after:  ' + ', '.join(out.num(x) for x in res.after))
            print(f'  district lost: {res.lost_district}')
    if args.axiom in ('gerrymandering', 'both'):
        if n < 3:
            print('gerrymandering-proofness: needs at least 3 districts')
        else:
            res = gerrymandering_proofness_counterexample(w, n)
            print('gerrymandering-proofness:')
            if isinstance(res, AxiomHolds):
                print(f'  holds ({res.reason})')
            else:
                print('  first:  ' + ', '.join(out.num(x) for x in res.first)
                      + f'  -> {res.first_seats} seats')
                print('  second: ' + ', '.join(out.num(x) for x in res.second)
                      + f'  -> {res.second_seats} seats')
    return EXIT_OK


def cmd_majorize(args, out: _Out) -> int:
    from misrep.majorization import majorizes, mm_violation_search

    if args.check:
        p, q = read_profile(args.check[0]), read_profile(args.check[1])
        verdict = majorizes(p, q)
        if verdict:
            print('majorizes: yes')
            print('partial-sum gaps: ' + ', '.join(out.num(g) for g in verdict.partial_sum_gaps))
        else:
            print(f'majorizes: no (first failure at k={verdict.index}: {verdict.reason})')
        return EXIT_OK
    if args.lam is None or args.w_eval is None:
        raise DomainError('either --check P Q or both --lam and --w-eval are required')
    found = mm_violation_search(args.lam, args.w_eval, args.attempts, args.seed)
    if found is None:
        print('violation: not found')
        return EXIT_OK
    print('violation: found')
    print(f'switch point u: {found.switch_point}')
    print('dominant: ' + ', '.join(out.num(x) for x in found.dominant))
    print('dominated: ' + ', '.join(out.num(x) for x in found.dominated))
    if args.out_prefix:
        for tag, prof in (('dominant', found.dominant), ('dominated', found.dominated)):
            with open(f'{args.out_prefix}{tag}.txt', 'w', encoding='utf-8') as fh:
                fh.write(format_profile(prof))
    return EXIT_OK


def cmd_gerry(args, out: _Out) -> int:
    from misrep.gerrymander import (
        INFEASIBLE,
        GerryTarget,
        cost_monotonicity_check,
        gerry_cost_oracle,
    )

    p = read_profile(args.profile)
    curve = cost_monotonicity_check(p, args.k, args.weights, args.base_weight)
    writer = csv.writer(sys.stdout, lineterminator='\n')
    header = ['w', 'cost']
    if args.oracle:
        header.append('oracle_cost')
    writer.writerow(header)
    for w, cost in curve:
        row = [out.num(w), out.num(cost)]
        if args.oracle:
            o = gerry_cost_oracle(GerryTarget(p, w, args.k, args.base_weight), args.oracle)
            row.append('infeasible' if o is INFEASIBLE else out.num(o))
        writer.writerow(row)
    if len(curve) < len(args.weights):
        print(f'# infeasible from w={out.num(args.weights[len(curve)])}', file=sys.stderr)
    return EXIT_OK


def cmd_empirics(args, out: _Out) -> int:
    from misrep.empirics import batch_run, exclusions_path

    summary = batch_run(
        args.input, args.baseline, args.output, cap=args.cap,
        min_districts=args.min_districts, nonmajor_max_frac=args.nonmajor_max_frac,
        decimal_digits=args.decimal_digits,
    )
    print(f'reports: {len(summary.reports)}')
    print(f'excluded: {len(summary.exclusions)}')
    print(f'errors: {len(summary.errors)} ({summary.skipped_rows} rows skipped)')
    print(f'log: {exclusions_path(args.output)}')
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='misrep',
        description='Misrepresentation-minimizing seat allocation for two-party elections.',
    )
    parser.add_argument('--decimal-digits', type=int, default=None,
                        help='print rounded decimals instead of exact fractions')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--decimal-digits', type=int, default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest='command', required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser('solve', help='optimal allocation at one weight')
    p.add_argument('profile')
    p.add_argument('--weight', '-w', type=_weight, required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('schedule', help='seat schedule and cutoff table')
    p.add_argument('profile')
    p.add_argument('--emit', choices=('csv', 'json'), default='csv')
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser('frontier', help='(dist, agg) points and Pareto flags')
    p.add_argument('profile')
    p.add_argument('--full', action='store_true', help='enumerate all 2**N allocations')
    p.add_argument('--slopes', action='store_true', help='print frontier segment slopes')
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser('axioms', help='counterexamples to monotonicity and gerrymandering-proofness')
    p.add_argument('--weight', '-w', type=_weight, required=True)
    p.add_argument('--districts', '-n', type=int, default=3)
    p.add_argument('--axiom', choices=('monotonicity', 'gerrymandering', 'both'), default='both')
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser('majorize', help='majorization check or violation search')
    p.add_argument('--check', nargs=2, metavar=('P', 'Q'))
    p.add_argument('--lam', type=_weight)
    p.add_argument('--w-eval', type=_weight)
    p.add_argument('--attempts', type=int, default=10_000)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--out-prefix', help='write the pair as <prefix>dominant.txt and <prefix>dominated.txt')
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser('gerry', help='gerrymandering cost curve')
    p.add_argument('profile')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--weights', type=_weight_list, required=True, help='comma-separated, increasing')
    p.add_argument('--base-weight', type=_weight, default=None)
    p.add_argument('--oracle', type=int, default=0, metavar='RESOLUTION',
                   help='also run the grid oracle at this resolution')
    p.set_defaults(func=cmd_gerry)

    p = sub.add_parser('empirics', help='implied weights from election returns')
    p.add_argument('--input', required=True)
    p.add_argument('--baseline', required=True)
    p.add_argument('--output', required=True)
    p.add_argument('--cap', type=_weight, default=_weight('0.6'))
    p.add_argument('--min-districts', type=int, default=8)
    p.add_argument('--nonmajor-max-frac', type=_weight, default=_weight('1/4'))
    p.set_defaults(func=cmd_empirics)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.decimal_digits)
    try:
        return args.func(args, out)
    except ResourceError as exc:
        print(f'misrep: {exc}', file=sys.stderr)
        return EXIT_RESOURCE
    except (DataError, DomainError, PreconditionError, OSError) as exc:
        print(f'misrep: {exc}', file=sys.stderr)
        return EXIT_DATA
    except MisrepError as exc:
        print(f'misrep: {exc}', file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
