"""
    sft_lift.cli
    ~~~~~~~~~~~~

    The `sft-lift` command line. Every command reads its inputs from files, from a
    catalog name or from stdin (`-`) and writes canonical JSON to stdout or, with
    `--out`, atomically to a file next to a `manifest.v1` sidecar. A certificate on
    stdout has its manifest on stderr.

    Exit codes: 0 witness or success, 10 refuted or empty, 11 no periodic point,
    20 resource limit, 2 invalid input, 1 rejected certificate.

    :license: MIT, see LICENSE for more details.
"""
import argparse
from datetime import datetime, timezone
import logging
import os
import sys
import time
from typing import Any, Dict, List, Mapping, Optional, Union

from sft_lift import schemas, zoo
from sft_lift.exceptions import ResourceLimit, SchemaError, SftLiftError
from sft_lift.freqlin import format_equation, frequency_probe
from sft_lift.groups import ball
from sft_lift.lift import CounterexampleReport, TranslationActionSpec, build_lifted_sft
from sft_lift.limiter import Limiter
from sft_lift.solver import EMPTY_AT_RADIUS, NO_PERIODIC_POINT, Certificate, aperiodicity_probe, emptiness_probe, \
    tla_probe
from sft_lift.utils import atomic_write, canonical_json, digest
from sft_lift.verify import verify_certificate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INVALID_INPUT = 2
EXIT_REFUTED = 10
EXIT_NO_PERIODIC_POINT = 11
EXIT_RESOURCE_LIMIT = 20

Source = Union[str, Mapping[str, Any]]


def read_source(source: str) -> Source:
    """ The parsed document behind a command line input

    `-` reads stdin, an existing path reads the file, anything else is kept as a
    catalog name.
    """
    if source == '-':
        return schemas.parse(sys.stdin.read())
    if os.path.exists(source):
        with open(source, encoding='utf-8') as handle:
            return schemas.parse(handle.read())
    return source


def limiter_from_args(args: argparse.Namespace) -> Limiter:
    """ The search limits of a command; flags left out fall back to the environment """
    return Limiter(node_budget=args.budget, time_limit=args.timeout, threads=args.threads)


def _manifest(args: argparse.Namespace, inputs: Dict[str, str], parameters: Dict[str, Any], outcome: str,
              document: Any) -> str:
    manifest = schemas.run_manifest(args.command, inputs, parameters, outcome, args.started,
                                    round(time.monotonic() - args.clock, 6), digest(document))
    return canonical_json(manifest) + '\n'


def _emit(args: argparse.Namespace, document: Any, inputs: Dict[str, str], parameters: Dict[str, Any],
          outcome: str) -> None:
    text = canonical_json(document) + '\n'
    if not args.out:
        sys.stdout.write(text)
        # a certificate on stdout keeps its manifest on stderr
        if isinstance(document, Mapping) and document.get('schema') == 'cert.v1':
            sys.stderr.write(_manifest(args, inputs, parameters, outcome, document))
        return
    atomic_write(args.out, text)
    atomic_write(f"{args.out}.manifest.json", _manifest(args, inputs, parameters, outcome, document))
    logger.debug(f" Wrote {args.out} and its manifest")


def cmd_ball(args: argparse.Namespace) -> int:
    oracle = schemas.group_from_json(read_source(args.group))
    window = ball(oracle, r=args.radius)
    group = schemas.group_to_json(oracle)
    _emit(args, schemas.ball_to_json(window, oracle), {'group': digest(group)}, {'radius': args.radius},
          f"{window.size} elements")
    return EXIT_OK


def cmd_check_empty(args: argparse.Namespace) -> int:
    sft = schemas.sft_from_json(read_source(args.sft))
    certificate = emptiness_probe(sft, args.rmax, limiter_from_args(args))
    _emit(args, certificate.to_json(), {'sft': certificate.inputs_digest}, {'rmax': args.rmax}, certificate.kind)
    return EXIT_REFUTED if certificate.kind == EMPTY_AT_RADIUS else EXIT_OK


def cmd_find_periodic(args: argparse.Namespace) -> int:
    sft = schemas.sft_from_json(read_source(args.sft))
    certificate = aperiodicity_probe(sft, args.mmax, limiter_from_args(args))
    _emit(args, certificate.to_json(), {'sft': certificate.inputs_digest}, {'mmax': args.mmax}, certificate.kind)
    return EXIT_NO_PERIODIC_POINT if certificate.kind == NO_PERIODIC_POINT else EXIT_OK


def cmd_lift(args: argparse.Namespace) -> int:
    spec = schemas.liftspec_from_json(read_source(args.liftspec))
    document = schemas.sft_to_json(build_lifted_sft(spec))
    _emit(args, document, {'liftspec': digest(schemas.liftspec_to_json(spec))}, {}, 'lifted')
    return EXIT_OK


def _load_action(source: Source) -> TranslationActionSpec:
    if isinstance(source, str):
        return zoo.lookup(source, 'action')
    return schemas.tla_from_json(source)


def report_to_json(report: CounterexampleReport) -> Dict[str, Any]:
    return {'ok': False, 'radius': report.radius, 'L': report.bound,
            'counterexamples': [{'kind': c.kind, 'start': list(c.start), 'words': [list(w) for w in c.words],
                                 'detail': c.detail} for c in report.counterexamples]}


def cmd_verify_tla(args: argparse.Namespace) -> int:
    action = _load_action(read_source(args.tla))
    result = tla_probe(action, ball(action.g_oracle, r=args.radius), args.L)
    parameters = {'radius': args.radius, 'L': args.L}
    if isinstance(result, Certificate):
        _emit(args, result.to_json(), {'tla': result.inputs_digest}, parameters, result.kind)
        return EXIT_OK
    logger.warning(f"The action is not translation-like: {result.counterexamples[0].detail}")
    _emit(args, report_to_json(result), {}, parameters, 'Counterexample')
    return EXIT_REFUTED


def cmd_freq(args: argparse.Namespace) -> int:
    sft = schemas.sft_from_json(read_source(args.sft))
    directions = args.directions.split(',') if args.directions else None
    report = frequency_probe(sft, directions)
    if args.verbose:
        for equation in report.reduced:
            print(format_equation(equation), file=sys.stderr)
    outcome = 'Feasible' if report.result.ok else 'Infeasible'
    _emit(args, report.to_json(), {'sft': digest(schemas.sft_to_json(sft))}, {'directions': directions}, outcome)
    if report.certificate is not None:
        if args.cert:
            document = report.certificate.to_json()
            atomic_write(args.cert, canonical_json(document) + '\n')
            atomic_write(f"{args.cert}.manifest.json", _manifest(args, {'sft': report.certificate.inputs_digest},
                                                                   {'directions': directions}, 'FrequencyInfeasible',
                                                                   document))
        return EXIT_REFUTED
    return EXIT_OK


def zoo_document(name: str, radius: int = 4) -> Dict[str, Any]:
    """ The JSON document of a catalog entry; actions are written as labels on a ball """
    entry = zoo.standard_catalog().entry(name)
    item = entry.factory()
    if entry.kind == 'group':
        return schemas.group_to_json(item)
    if entry.kind == 'sft':
        return schemas.sft_to_json(item)
    if entry.kind == 'liftspec':
        return schemas.liftspec_to_json(item)
    return schemas.tla_to_json(item.to_finite_data(ball(item.g_oracle, r=radius)))


def cmd_zoo(args: argparse.Namespace) -> int:
    if args.action == 'list':
        for name, info in zoo.describe().items():
            if args.kind is None or info['kind'] == args.kind:
                print(f"{name:<20} {info['kind']:<9} {info['description']}")
        return EXIT_OK
    if not args.name:
        raise SchemaError("zoo get needs a catalog name")
    kind = zoo.standard_catalog().entry(args.name).kind
    _emit(args, zoo_document(args.name, args.radius), {}, {'name': args.name}, kind)
    return EXIT_OK


def _subject(certificate: Mapping[str, Any], source: Source) -> Dict[str, Any]:
    if certificate.get('kind') != 'TlaVerified':
        return schemas.sft_to_json(schemas.sft_from_json(source))
    if isinstance(source, str):
        action = zoo.lookup(source, 'action')
        payload = certificate['payload']
        window = ball(action.g_oracle, r=int(payload['radius']) + int(payload['L']))
        return schemas.tla_to_json(action.to_finite_data(window))
    return schemas.tla_to_json(schemas.tla_from_json(source))


def cmd_verify(args: argparse.Namespace) -> int:
    certificate = read_source(args.certificate)
    if isinstance(certificate, str):
        raise SchemaError(f"No certificate file {certificate!r}")
    schemas.validate(certificate, 'cert.v1')
    verification = verify_certificate(certificate, _subject(certificate, read_source(args.subject)))
    outcome = 'ok' if verification.ok else 'rejected'
    _emit(args, verification.to_json(), {'certificate': digest(certificate)}, {}, outcome)
    return EXIT_OK if verification.ok else EXIT_REJECTED


def _search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--budget', type=int, default=None, help="search nodes per search (SFTLIFT_NODE_BUDGET)")
    parser.add_argument('--timeout', type=float, default=None, help="wall-clock seconds per search")
    parser.add_argument('--threads', type=int, default=None,
                        help="worker threads for root-level subtrees (SFTLIFT_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help="debug logging on stderr")
    common.add_argument('--out', default=None, help="write the result atomically to this file, with a manifest")

    parser = argparse.ArgumentParser(prog='sft-lift', description="Subshifts of finite type on finitely "
                                                                  "generated groups and their lifts")
    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser('ball', parents=[common], help="the ball of a group")
    sub.add_argument('group', nargs='?', default='-', help="group.v1 file, catalog name or -")
    sub.add_argument('--radius', '-r', type=int, required=True)
    sub.set_defaults(func=cmd_ball)

    sub = commands.add_parser('check-empty', parents=[common], help="refute balls of growing radius")
    sub.add_argument('sft', nargs='?', default='-', help="sft.v1 file, catalog name or -")
    sub.add_argument('--rmax', type=int, default=4)
    _search_flags(sub)
    sub.set_defaults(func=cmd_check_empty)

    sub = commands.add_parser('find-periodic', parents=[common], help="search points on finite quotients")
    sub.add_argument('sft', nargs='?', default='-', help="sft.v1 file, catalog name or -")
    sub.add_argument('--mmax', type=int, default=3)
    _search_flags(sub)
    sub.set_defaults(func=cmd_find_periodic)

    sub = commands.add_parser('lift', parents=[common], help="build the lifted SFT of a lift specification")
    sub.add_argument('liftspec', nargs='?', default='-', help="liftspec.v1 file, catalog name or -")
    sub.set_defaults(func=cmd_lift)

    sub = commands.add_parser('verify-tla', parents=[common],
                              help="check that an action is translation-like on a ball")
    sub.add_argument('tla', nargs='?', default='-', help="tla.v1 file, catalog action name or -")
    sub.add_argument('--radius', '-r', type=int, default=4)
    sub.add_argument('-L', type=int, default=None, help="freeness bound, the radius by default")
    sub.set_defaults(func=cmd_verify_tla)

    sub = commands.add_parser('freq', parents=[common],
                              help="solve the frequency system of a nearest-neighbor SFT")
    sub.add_argument('sft', nargs='?', default='-', help="sft.v1 file, catalog name or -")
    sub.add_argument('--directions', default=None, help="comma separated generators, the primary ones by default")
    sub.add_argument('--cert', default=None, help="write the FrequencyInfeasible certificate to this file")
    sub.set_defaults(func=cmd_freq)

    sub = commands.add_parser('zoo', parents=[common], help="the catalog of constructions")
    sub.add_argument('action', choices=('list', 'get'))
    sub.add_argument('name', nargs='?', default=None)
    sub.add_argument('--kind', default=None, choices=('group', 'action', 'liftspec', 'sft'))
    sub.add_argument('--radius', '-r', type=int, default=4, help="ball radius for the labels of an action")
    sub.set_defaults(func=cmd_zoo)

    sub = commands.add_parser('verify', parents=[common], help="re-validate a certificate against its subject")
    sub.add_argument('certificate', help="cert.v1 file or -")
    sub.add_argument('subject', help="sft.v1 or tla.v1 file, or catalog name")
    sub.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    args.started = datetime.now(timezone.utc).isoformat()
    args.clock = time.monotonic()
    try:
        return args.func(args)
    except ResourceLimit as e:
        logger.error(f"{e} in {e.elapsed or 0:.1f}s, no conclusion")
        return EXIT_RESOURCE_LIMIT
    except (SftLiftError, OSError) as e:
        print(f"sft-lift: error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == '__main__':
    sys.exit(main())
