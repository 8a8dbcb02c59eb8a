import os
import sys

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(BASE_DIR)
sys.path.append(ROOT_DIR)

import argparse
import datetime

from lib.designers.angmom import (angmom_decompose, compile_protocol, format_path, parse_path,
                                  reference_state, validate_path)
from lib.designers.families import degeneracy_configuration, family_setup, family_state
from lib.designers.symmetric import design_symmetric
from lib.errors import SetupValidationError, SwitchboardError
from lib.helpers.config_helper import dict2str, load_options
from lib.helpers.report_helper import RunReport, complex_pair, digest, file_digest, write_report
from lib.helpers.target_helper import parse_coefficients, parse_partition, parse_target
from lib.helpers.tester_helper import OracleTester
from lib.helpers.utils_helper import create_logger, set_random_seed
from lib.setups.config_io import read_setup, write_setup
from lib.setups.setup_model import errors_only, validate
from lib.simulators.emission import generate_state, success_weight
from lib.states.dicke import decompose, symmetric_state
from lib.states.qstate import check_mode_cap, fidelity, normalize

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
# coefficients smaller than this are left out of the angular momentum listing
LISTING_TOL = 1e-12


def build_parser():
    parser = argparse.ArgumentParser(description='Polarization-entanglement switch-board: simulate setups and design them for target states')
    parser.add_argument('--options', dest='options', default=None, help='runtime options in yaml format')
    parser.add_argument('--log-file', dest='log_file', default=None, help='also write the log to this file')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('simulate', help='post-selected state of a setup config')
    p.add_argument('--config', required=True, help='setup config in yaml format')
    p.add_argument('--target', default=None, help='dicke:<d..>, path:<literal>, ghz, w or a state dump file')
    p.add_argument('--out', default=None, help='report file (default: stdout)')
    p.add_argument('--lossy', action='store_true', default=False, help='accept non-unimodular couplings')
    p.add_argument('--cap', type=int, default=None, help='maximum number of modes')

    p = sub.add_parser('design-sym', help='setup for a symmetric target sum_k d_k |D_N(k)>')
    p.add_argument('--n', type=int, required=True, help='number of sources')
    p.add_argument('--d', required=True, help='comma separated Dicke coefficients d_0..d_N')
    p.add_argument('--out', default='outputs/design_sym.yaml', help='where to write the setup config')
    p.add_argument('--cap', type=int, default=None, help='maximum number of modes')

    p = sub.add_parser('design-angmom', help='setup for a total angular momentum eigenstate')
    p.add_argument('path', help="coupling path literal, e.g. '1/2,1,1/2;m=+1/2'")
    p.add_argument('--out', default='outputs/design_angmom.yaml', help='where to write the setup config')
    p.add_argument('--cap', type=int, default=None, help='maximum number of modes')

    p = sub.add_parser('design-family', help='setup for the canonical state of an entanglement family')
    p.add_argument('--family', required=True, help='comma separated Majorana multiplicities, e.g. 2,1')
    p.add_argument('--points', default=None, help='comma separated positions of the third and later groups')
    p.add_argument('--out', default='outputs/design_family.yaml', help='where to write the setup config')
    p.add_argument('--cap', type=int, default=None, help='maximum number of modes')

    p = sub.add_parser('decompose', help='Dicke and angular momentum expansion of a state')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--config', default=None, help='simulate this setup config and decompose the result')
    group.add_argument('--target', default=None, help='decompose this target state')
    p.add_argument('--n', type=int, default=None, help='number of modes for ghz/w targets')
    p.add_argument('--out', default=None, help='report file (default: stdout)')
    p.add_argument('--lossy', action='store_true', default=False, help='accept non-unimodular couplings')
    p.add_argument('--cap', type=int, default=None, help='maximum number of modes')

    p = sub.add_parser('oracle-check', help='engine vs permutation-sum oracle')
    p.add_argument('--config', default=None, help='check this setup instead of random ones')
    p.add_argument('--seed', type=int, default=None, help='random seed')
    p.add_argument('--trials', type=int, default=None, help='number of random setups')
    p.add_argument('--lossy', action='store_true', default=False, help='accept non-unimodular couplings')
    p.add_argument('--cap', type=int, default=None, help='maximum number of sources for the oracle')
    return parser


def overrides_from_args(args):
    overrides = {}
    if getattr(args, 'cap', None) is not None:
        section = 'oracle' if args.command == 'oracle-check' else 'state'
        key = 'max_sources' if args.command == 'oracle-check' else 'max_modes'
        overrides[section] = {key: args.cap}
    if getattr(args, 'seed', None) is not None:
        overrides['random_seed'] = args.seed
    if getattr(args, 'trials', None) is not None:
        overrides.setdefault('oracle', {})['trials'] = args.trials
    return overrides


def load_checked_setup(path, lossy, opt, report):
    """Read a setup; returns None after recording the violations in report."""
    config = read_setup(path)
    if lossy:
        config = config.with_lossy()
    violations = validate(config, tol=opt['tolerance']['normalization'])
    report.violations = violations
    if errors_only(violations):
        return None
    return config


def simulate_into(report, config, opt):
    """Run the engine and fill state, Dicke expansion and success weight."""
    raw = generate_state(config, max_modes=opt['state']['max_modes'], tol=opt['tolerance']['normalization'])
    report.success_weight = success_weight(raw, config.n_sources)
    report.destructive_interference = raw.destructive_interference
    report.details['n_sources'] = config.n_sources
    report.details['squared_norm'] = raw.squared_norm
    if raw.destructive_interference:
        return None
    state = raw.normalized()
    report.set_state(state)
    report.set_dicke(decompose(state))
    return state


def cmd_simulate(args, opt, logger):
    report = RunReport('simulate', file_digest(args.config, args.target or '', str(args.lossy)))
    config = load_checked_setup(args.config, args.lossy, opt, report)
    if config is None:
        logger.error('Setup %s is invalid', args.config)
        write_report(report, args.out)
        return EXIT_VALIDATION
    state = simulate_into(report, config, opt)
    if args.target is not None:
        target = parse_target(args.target, n=config.n_sources, max_modes=opt['state']['max_modes'])
        if target.n_modes != config.n_sources:
            raise SetupValidationError('target has %d modes, setup has %d' % (target.n_modes, config.n_sources))
        if state is not None:
            report.fidelity = fidelity(state, target)
            logger.info('Fidelity vs target: %.17g', report.fidelity)
    if state is None:
        logger.warning('No coincidence state: every amplitude interferes away')
    write_report(report, args.out)
    return EXIT_OK


def check_fidelity(report, tol, logger):
    if report.fidelity is None or report.fidelity < 1.0 - tol:
        logger.error('Design fidelity %r below 1 - %.0e', report.fidelity, tol)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_design_sym(args, opt, logger):
    report = RunReport('design-sym', digest('n=%d' % args.n, 'd=%s' % args.d))
    d = parse_coefficients(args.d)
    check_mode_cap(args.n, opt['state']['max_modes'])
    config = design_symmetric(d, args.n,
                              degree_tol=opt['design']['degree_tol'],
                              newton_steps=opt['design']['newton_steps'])
    write_setup(config, args.out)
    logger.info('Setup written to %s', args.out)
    report.details['config_path'] = args.out
    report.details['settings'] = [{'theta': s.to_angles()[0], 'phi': s.to_angles()[1]} for s in config.settings]
    report.details['family'] = list(degeneracy_configuration(d, tol=opt['design']['family_tol'],
                                                             degree_tol=opt['design']['degree_tol'],
                                                             newton_steps=opt['design']['newton_steps']))
    state = simulate_into(report, config, opt)
    if state is not None:
        report.fidelity = fidelity(state, symmetric_state(d, max_modes=opt['state']['max_modes']))
        logger.info('Round-trip fidelity: %.17g', report.fidelity)
    write_report(report)
    return check_fidelity(report, opt['tolerance']['design_fidelity'], logger)


def cmd_design_angmom(args, opt, logger):
    report = RunReport('design-angmom', digest('path=%s' % args.path))
    path = parse_path(args.path)
    violations = validate_path(path)
    if violations:
        report.violations = violations
        for v in violations:
            logger.error(str(v))
        write_report(report)
        return EXIT_VALIDATION
    check_mode_cap(path.n, opt['state']['max_modes'])
    config = compile_protocol(path)
    write_setup(config, args.out)
    logger.info('Setup for %s written to %s', format_path(path), args.out)
    report.details['config_path'] = args.out
    report.details['path'] = format_path(path)
    report.details['n_links'] = len(config.network.links())
    state = simulate_into(report, config, opt)
    if state is not None:
        report.fidelity = fidelity(state, reference_state(path, max_modes=opt['state']['max_modes']))
        logger.info('Fidelity vs reference state: %.17g', report.fidelity)
    write_report(report)
    return check_fidelity(report, opt['tolerance']['protocol_fidelity'], logger)


def cmd_design_family(args, opt, logger):
    report = RunReport('design-family', digest('family=%s' % args.family, 'points=%s' % args.points))
    partition = parse_partition(args.family)
    points = None if args.points is None else parse_coefficients(args.points, minimum=0)
    check_mode_cap(sum(partition), opt['state']['max_modes'])
    config = family_setup(partition, points)
    write_setup(config, args.out)
    logger.info('Setup for family %s written to %s', list(partition), args.out)
    report.details['config_path'] = args.out
    report.details['family'] = list(partition)
    state = simulate_into(report, config, opt)
    if state is not None:
        d = family_state(partition, points)
        report.fidelity = fidelity(state, symmetric_state(d, max_modes=opt['state']['max_modes']))
        logger.info('Fidelity vs canonical state: %.17g', report.fidelity)
        measured = degeneracy_configuration(decompose(state).coefficients, tol=opt['design']['family_tol'],
                                            degree_tol=opt['design']['degree_tol'],
                                            newton_steps=opt['design']['newton_steps'])
        report.details['measured_family'] = list(measured)
        if measured != partition:
            logger.warning('Simulated state falls in family %s, expected %s', list(measured), list(partition))
    write_report(report)
    return check_fidelity(report, opt['tolerance']['design_fidelity'], logger)


def cmd_decompose(args, opt, logger):
    if args.config is not None:
        report = RunReport('decompose', file_digest(args.config, str(args.lossy)))
        config = load_checked_setup(args.config, args.lossy, opt, report)
        if config is None:
            write_report(report, args.out)
            return EXIT_VALIDATION
        state = simulate_into(report, config, opt)
    else:
        report = RunReport('decompose', digest('target=%s' % args.target, 'n=%s' % args.n))
        state = normalize(parse_target(args.target, n=args.n, max_modes=opt['state']['max_modes']))
        report.set_state(state)
        report.set_dicke(decompose(state))
    if state is not None:
        listing = []
        for path, amp in angmom_decompose(state, max_modes=opt['state']['max_modes']):
            if abs(amp) > LISTING_TOL:
                listing.append({'path': format_path(path), 'amplitude': complex_pair(amp)})
        report.details['angmom'] = listing
    write_report(report, args.out)
    return EXIT_OK


def cmd_oracle_check(args, opt, logger):
    tester = OracleTester(opt['oracle'], logger, opt['tolerance'], max_modes=opt['state']['max_modes'])
    tol = opt['tolerance']['agreement']
    if args.config is not None:
        report = RunReport('oracle-check', file_digest(args.config, str(args.lossy)))
        config = load_checked_setup(args.config, args.lossy, opt, report)
        if config is None:
            write_report(report)
            return EXIT_VALIDATION
        worst = tester.check_config(config)
        failures = int(worst > tol)
    else:
        trials = opt['oracle']['trials']
        report = RunReport('oracle-check', digest('seed=%d' % opt['random_seed'], 'trials=%d' % trials))
        rng = set_random_seed(opt['random_seed'])
        worst, failures = tester.run_random(rng, trials)
        report.details['trials'] = trials
        report.details['seed'] = opt['random_seed']
    report.details['max_deviation'] = worst
    report.details['failures'] = failures
    write_report(report)
    return EXIT_OK if failures == 0 else EXIT_NUMERICAL


COMMANDS = {
    'simulate': cmd_simulate,
    'design-sym': cmd_design_sym,
    'design-angmom': cmd_design_angmom,
    'design-family': cmd_design_family,
    'decompose': cmd_decompose,
    'oracle-check': cmd_oracle_check,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        opt = load_options(args.options, overrides_from_args(args))
    except SwitchboardError as e:
        create_logger().error(str(e))
        return e.exit_code
    log_file = args.log_file
    if log_file is None and opt['logger'].get('log_dir'):
        os.makedirs(opt['logger']['log_dir'], exist_ok=True)
        log_file = os.path.join(opt['logger']['log_dir'], '%s.log.%s' % (
            args.command, datetime.datetime.now().strftime('%Y%m%d_%H%M%S')))
    logger = create_logger(log_file, level=opt['logger']['level'])
    logger.debug('Options:%s', dict2str(opt))

    try:
        return COMMANDS[args.command](args, opt, logger)
    except SwitchboardError as e:
        logger.error(str(e))
        return e.exit_code
    except ValueError as e:
        # library preconditions (bad coefficient counts, all-zero targets, ...)
        logger.error(str(e))
        return EXIT_VALIDATION


if __name__ == '__main__':
    sys.exit(main())
