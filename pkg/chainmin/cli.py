from chainmin.misc import *
from chainmin.core import Family, poset_from_descriptor
from chainmin.calc.chains import check_descending, check_symmetry, check_homogeneity_consequence, check_rank_unimodal, HOMOGENEITY_EXHAUSTIVE_MAX
from chainmin.calc.centred import mk_table, convexity_certificate
from chainmin.calc.expectation import expectation_report
from chainmin.calc.compression import RankDistribution, compress_to_fixpoint
from chainmin.verify import verify_kleitman_suite, probe_minimize

import io
import csv
import sys
import json
import argparse


COMMANDS = ('profile', 'mk', 'verify', 'compress', 'expect', 'probe')
FORMATS = ('csv', 'json')
STRATEGIES = ('hill_climb', 'anneal', 'exhaustive')
SYMMETRY_SAMPLES = 500
SYMMETRY_EXHAUSTIVE_N = 5

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

PROPERTY_LEVELS = "rank level sizes |P_0|, ..., |P_n|"
PROPERTY_DESCENT = "descending: c_2'(i, j) <= c_2'(i-1, j-1) for 0 < i < j <= n"
PROPERTY_SYMMETRY = "symmetric: |P_i| = |P_{n-i}| and c_k'(I, J) = c_k'(n-I, n-J)"
PROPERTY_HOMOGENEITY = "homogeneous: c_k'(L, J) depends only on the rank set of L"
PROPERTY_UNIMODAL = "rank sizes grow towards the middle rank"
PROPERTY_CONVEXITY = "m_k convex: Delta m_k nondecreasing, jumping at the breakpoints a_l"
PROPERTY_KLEITMAN = "centred families minimise k-chains, non-centred ones have strictly more"
PROPERTY_COMPRESSION = "compression keeps w_k nonincreasing and stops at a centred profile with w_k = m_k(a)"
PROPERTY_EXPECTATION = "random maximal chain: E[m_k(|A n C|) - c_k-term] <= 0 yields c_k(A) >= m_k(|A|)"
PROPERTY_PROBE = "local search finds no family below m_k(a)"


class ConfigError(ValueError):
    """
    Raised for a malformed or incomplete run configuration.
    """


def _ints(text:str, tag:str) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(',') if v.strip() != '')
    except ValueError:
        raise ConfigError(" \
            [ERROR] RunConfig: `%s` is not a comma-separated list of integers for %s. \
            "%(text, tag)
        )


def _profile_sampled(descriptor:str) -> bool:
    """
    Whether `profile` checks symmetry or homogeneity on random samples.
    """
    try:
        P = poset_from_descriptor(descriptor)
    except ValueError as e:
        raise ConfigError(str(e))

    return P.n > SYMMETRY_EXHAUSTIVE_N or sum(P.level_sizes()) > HOMOGENEITY_EXHAUSTIVE_MAX


def _a_range(text:str) -> Tuple[int, ...]:
    """
    `N` or an inclusive range `LO:HI`.
    """
    lo, sep, hi = text.partition(':')

    try:
        if not sep:
            return (int(lo),)

        return tuple(range(int(lo), int(hi) + 1))
    except ValueError:
        raise ConfigError(" \
            [ERROR] RunConfig: `%s` is neither an integer nor a range LO:HI. \
            "%(text)
        )


@dataclass
class RunConfig:
    command: str
    poset: str
    k: Tuple[int, ...] = ()
    a: Tuple[int, ...] = ()
    seed: Optional[int] = None
    budget: Optional[int] = None
    out: Optional[str] = None
    format: str = 'csv'
    plot: Optional[str] = None
    start: Optional[str] = None
    members: Optional[Tuple[int, ...]] = None
    levels: Optional[Tuple[int, ...]] = None
    strategy: str = 'hill_climb'
    mode: str = 'auto'

    def validate(self) -> 'RunConfig':
        """
        Check the configuration before anything runs.

        Raises:
            ConfigError: on any missing or inconsistent field.
        """
        if self.command not in COMMANDS:
            raise ConfigError(" \
                [ERROR] RunConfig: unknown command `%s`. \
                "%(self.command)
            )

        if self.format not in FORMATS:
            raise ConfigError(" \
                [ERROR] RunConfig: output format must be csv or json, got `%s`. \
                "%(self.format)
            )

        if any(k < 1 for k in self.k):
            raise ConfigError(" \
                [ERROR] RunConfig: k values must be positive, got %r. \
                "%(self.k,)
            )

        if self.budget is not None and self.budget < 0:
            raise ConfigError(" \
                [ERROR] RunConfig: budget must be non-negative, got %d. \
                "%(self.budget)
            )

        if self.command in ('compress', 'expect', 'probe') and not self.k:
            raise ConfigError(" \
                [ERROR] RunConfig: `%s` needs --k. \
                "%(self.command)
            )

        if self.command == 'probe':
            if not self.a:
                raise ConfigError(" \
                    [ERROR] RunConfig: `probe` needs --a. \
                ")

            if self.strategy not in STRATEGIES:
                raise ConfigError(" \
                    [ERROR] RunConfig: unknown strategy `%s`. \
                    "%(self.strategy)
                )

        if self.command == 'compress':
            if self.start is None:
                raise ConfigError(" \
                    [ERROR] RunConfig: `compress` needs --start levels:i,j,... | random | file:<path>. \
                ")

            kind = self.start.partition(':')[0]

            if kind not in ('levels', 'random', 'file'):
                raise ConfigError(" \
                    [ERROR] RunConfig: malformed start `%s`. \
                    "%(self.start)
                )

        if self.command == 'expect':
            if (self.members is None) == (self.levels is None):
                raise ConfigError(" \
                    [ERROR] RunConfig: `expect` needs exactly one of --members and --levels. \
                ")

            if self.mode not in ('auto', 'exact', 'mc'):
                raise ConfigError(" \
                    [ERROR] RunConfig: unknown expectation mode `%s`. \
                    "%(self.mode)
                )

        if self.randomized and self.seed is None:
            raise ConfigError(" \
                [ERROR] RunConfig: `%s` is randomized here and needs --seed. \
                "%(self.command)
            )

        return self

    @property
    def randomized(self) -> bool:
        if self.command == 'profile':
            return _profile_sampled(self.poset)

        if self.command == 'probe':
            return self.strategy != 'exhaustive'

        if self.command == 'compress':
            return self.start == 'random'

        if self.command == 'expect':
            return self.mode != 'exact'

        return False


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog='chainmin',
        description="Chain counts of families in graded posets: m_k tables, exhaustive and randomized checks."
    )
    p.add_argument("command", choices=COMMANDS, help="What to run.")
    p.add_argument("--poset", required=True, help="boolean:N, subspace:Q,N or chain:N.")
    p.add_argument("--k", default='', help="Chain size(s), comma-separated.")
    p.add_argument("--a", default=None, help="Family size N or inclusive range LO:HI.")
    p.add_argument("--seed", type=int, default=None, help="Seed of randomized commands.")
    p.add_argument("--budget", type=int, default=None, help="Search steps (probe) or samples (expect).")
    p.add_argument("--out", default=None, help="Output file; standard output by default.")
    p.add_argument("--format", default='csv', help="csv or json.")
    p.add_argument("--plot", default=None, help="Save a figure of the m_k table or trajectory here.")
    p.add_argument("--start", default=None, help="compress start: levels:i,j,... | random | file:<path>.")
    p.add_argument("--members", default=None, help="expect: comma-separated element indices.")
    p.add_argument("--levels", default=None, help="expect: comma-separated ranks of full levels.")
    p.add_argument("--strategy", default='hill_climb', help="probe: hill_climb, anneal or exhaustive.")
    p.add_argument("--mode", default='auto', help="expect: auto, exact or mc.")

    return p


def parse_args(argv:Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)

    return RunConfig(
        command=args.command,
        poset=args.poset,
        k=_ints(args.k, '--k'),
        a=_a_range(args.a) if args.a is not None else (),
        seed=args.seed,
        budget=args.budget,
        out=args.out,
        format=args.format,
        plot=args.plot,
        start=args.start,
        members=_ints(args.members, '--members') if args.members is not None else None,
        levels=_ints(args.levels, '--levels') if args.levels is not None else None,
        strategy=args.strategy,
        mode=args.mode
    ).validate()


def _summary(passed:bool, prop:str, detail:str = '') -> None:
    print("%s  %s%s"%('PASS' if passed else 'FAIL', prop, ('  [%s]'%(detail)) if detail else ''), file=sys.stderr)


def _emit(cfg:RunConfig, record:Any, header:Sequence[str], rows:Iterable[Sequence[Any]]) -> None:
    if cfg.format == 'json':
        text = json.dumps(record, indent=2, sort_keys=True) + '\n'
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()

    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, 'w', encoding='utf-8', newline='') as f:
            f.write(text)


def cmd_profile(cfg:RunConfig) -> int:
    P = poset_from_descriptor(cfg.poset)
    sizes = P.level_sizes()
    k_max = max(cfg.k) if cfg.k else min(P.n + 1, 3)
    samples = None if P.n <= SYMMETRY_EXHAUSTIVE_N else SYMMETRY_SAMPLES
    seed = cfg.seed

    descent = check_descending(P)
    symmetry = [check_symmetry(P, k, samples, seed) for k in range(1, k_max + 1)]
    homogeneity = check_homogeneity_consequence(P, k_max, seed=seed)
    unimodal = check_rank_unimodal(P)

    _summary(True, PROPERTY_LEVELS, ','.join(str(s) for s in sizes))
    _summary(bool(descent), PROPERTY_DESCENT, descent.classification)
    _summary(all(symmetry), PROPERTY_SYMMETRY)
    _summary(bool(homogeneity), PROPERTY_HOMOGENEITY)
    _summary(bool(unimodal), PROPERTY_UNIMODAL)

    record = {
        'poset': P.descriptor(), 'levels': list(sizes), 'descent': descent.classification,
        'tight': [list(t) for t in descent.tight], 'violating': [list(t) for t in descent.violating],
        'symmetric': all(symmetry), 'homogeneous': bool(homogeneity), 'unimodal': bool(unimodal)
    }
    _emit(cfg, record, ('rank', 'size'), enumerate(sizes))

    ok = bool(descent) and all(symmetry) and bool(homogeneity)

    return EXIT_PASS if ok else EXIT_VIOLATION


def cmd_mk(cfg:RunConfig) -> int:
    P = poset_from_descriptor(cfg.poset)
    ks = cfg.k or (2,)
    tables, rows, record, ok = [], [], {'poset': P.descriptor(), 'tables': []}, True

    for k in ks:
        table = mk_table(P, k)
        cert = convexity_certificate(table)
        ok &= bool(cert)
        tables.append(table)
        _summary(bool(cert), PROPERTY_CONVEXITY, 'k=%d, %d distinct slopes'%(k, cert.details.get('distinct_deltas', 0)))

        for a, m, d, bp in table.rows():
            rows.append((k, a, m, '' if d is None else d, int(bp)))

        record['tables'].append({
            'k': k, 'values': list(table.values), 'breakpoints': list(table.breakpoints), 'convex': bool(cert)
        })

    _emit(cfg, record, ('k', 'a', 'm', 'delta', 'breakpoint'), rows)

    if cfg.plot is not None:
        from chainmin.canvas import Canvas

        canva = Canvas()

        for table in tables:
            canva.add(table)

        canva.save(cfg.plot)

    return EXIT_PASS if ok else EXIT_VIOLATION


def cmd_verify(cfg:RunConfig) -> int:
    P = poset_from_descriptor(cfg.poset)
    ks = cfg.k or tuple(range(2, P.n + 2))
    report = verify_kleitman_suite(P, ks)

    _summary(report.passed, PROPERTY_KLEITMAN, '%d (k, a) pairs, %d counterexamples'%(len(report.table), len(report.counterexamples)))
    _emit(cfg, report.record(), ('k', 'a', 'min', 'm_k', 'minimizers', 'all_centred'), report.rows())

    return EXIT_PASS if report.passed else EXIT_VIOLATION


def _start_distribution(cfg:RunConfig, P) -> RankDistribution:
    kind, _, rest = cfg.start.partition(':')

    if kind == 'levels':
        return RankDistribution.from_levels(P, _ints(rest, '--start'))

    if kind == 'random':
        return RankDistribution.random(P, cfg.seed, cfg.a[0] if cfg.a else None)

    with open(rest, encoding='utf-8') as f:
        data = json.load(f)

    if 'counts' in data:
        return RankDistribution.from_counts(P, [int(c) for c in data['counts']])

    return RankDistribution(P, data['p'])


def cmd_compress(cfg:RunConfig) -> int:
    P = poset_from_descriptor(cfg.poset)
    dist = _start_distribution(cfg, P)
    traj = compress_to_fixpoint(dist, cfg.k[0])
    records = traj.records()

    _summary(True, PROPERTY_COMPRESSION, '%d steps, endpoint w_k = %s = m_k(%d)'%(len(traj), fmtRational(traj.w[-1]), dist.a))

    record = {
        'poset': P.descriptor(), 'k': traj.k, 'a': dist.a, 'form': list(traj.form),
        'm_k': traj.m_k, 'steps': records,
        'strictness': [
            {key: fmtRational(v) if isinstance(v, Fraction) else v for key, v in row.items()}
            for row in traj.strictness_map()
        ]
    }
    rows = [(r['step'], r['i'], r['i_prime'], int(r['reversed']), r['h']) for r in records]
    _emit(cfg, record, ('step', 'i', 'i_prime', 'reversed', 'h'), rows)

    if cfg.plot is not None:
        from chainmin.canvas import plot

        plot(traj, cfg.plot)

    return EXIT_PASS


def cmd_expect(cfg:RunConfig) -> int:
    P = poset_from_descriptor(cfg.poset)

    if cfg.members is not None:
        A = Family(P, cfg.members)
    else:
        A = Family.levels(P, cfg.levels)

    samples = cfg.budget if cfg.budget is not None else 10000
    rep = expectation_report(A, cfg.k[0], cfg.mode, samples, cfg.seed)

    _summary(rep.holds, PROPERTY_EXPECTATION, '%s mode, c_k = %d, m_k = %d'%(rep.mode, rep.ck, rep.mk))
    _emit(cfg, rep.record(), ('k', 'chains', 'size', 'c_k', 'm_k'), [(rep.k, rep.chains, rep.size, rep.ck, rep.mk)])

    return EXIT_PASS if rep.holds else EXIT_VIOLATION


def cmd_probe(cfg:RunConfig) -> int:
    P = poset_from_descriptor(cfg.poset)
    budget = cfg.budget if cfg.budget is not None else 10 ** 5
    probes = []

    for k in cfg.k:
        for a in cfg.a:
            artifact = None if cfg.out is None else '%s.counterexample-k%d-a%d.json'%(cfg.out, k, a)
            probes.append(probe_minimize(P, k, a, cfg.strategy, budget, cfg.seed, artifact=artifact))

    ok = all(pr.sound for pr in probes)

    _summary(ok, PROPERTY_PROBE, '%d probes, %s'%(len(probes), cfg.strategy))
    _emit(
        cfg, {'probes': [pr.record() for pr in probes]},
        ('k', 'a', 'budget', 'steps', 'start', 'best', 'm_k'),
        [(pr.k, pr.a, pr.budget, pr.steps, pr.start_ck, pr.best_ck, pr.mk) for pr in probes]
    )

    return EXIT_PASS if ok else EXIT_VIOLATION


HANDLERS = {
    'profile': cmd_profile,
    'mk': cmd_mk,
    'verify': cmd_verify,
    'compress': cmd_compress,
    'expect': cmd_expect,
    'probe': cmd_probe
}


def main(argv:Optional[List[str]] = None) -> int:
    """
    Run one command; the return value is the process exit code: 0 when every
    checked property holds, 1 on a violation, 2 on a usage error, 3 when a
    resource guard refused the work.
    """
    try:
        cfg = parse_args(argv)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    try:
        return HANDLERS[cfg.command](cfg)
    except ResourceLimitError as e:
        print(str(e), file=sys.stderr)
        return EXIT_RESOURCE
    except PropertyViolation as e:
        print(str(e), file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, OSError, KeyError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
