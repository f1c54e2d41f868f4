"""
    sft_lift.schemas
    ~~~~~~~~~~~~~~~~

    The versioned JSON documents (`group.v1`, `sft.v1`, `cert.v1`, ...) and the
    conversions between them and the library objects.

    Every document carries its `schema` name and is validated by a pydantic model
    refusing unknown fields. Wherever a group, an SFT or a lift specification is
    expected, a catalog name may stand for the inline document.

    :license: MIT, see LICENSE for more details.
"""
import json
import logging
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

import pydantic as pyd

from sft_lift import zoo
from sft_lift.exceptions import SchemaError, SftLiftError, SymbolMismatch
from sft_lift.groups import (Ball, BaumslagSolitar1n, DirectProduct, FiniteGroup, FreeAbelian, FreeGroup,
                             GeneratorSymbol, Heisenberg, Lamplighter, MonoidPresentation, WordOracle)
from sft_lift.lift import FiniteData, LiftSpec
from sft_lift.quotients import SchreierGraph
from sft_lift.rewriting import RewritingSystem
from sft_lift.sft import (Alphabet, ForbiddenPattern, LocalConstraint, Pattern, ProductAlphabet, Sft,
                          canonicalize_pattern, make_checker)

logger = logging.getLogger(__name__)

Symbol = Union[int, str]
WordList = List[str]


class _Model(pyd.BaseModel):
    model_config = pyd.ConfigDict(extra='forbid')


class GeneratorModel(_Model):
    name: str
    inverse: Optional[str] = None


class FreeGroupStrategy(_Model):
    kind: Literal['free_group']
    rank: int
    names: List[str]


class FreeAbelianStrategy(_Model):
    kind: Literal['free_abelian']
    rank: int
    names: List[str]


class BaumslagSolitarStrategy(_Model):
    kind: Literal['baumslag_solitar']
    n: int
    names: List[str]


class HeisenbergStrategy(_Model):
    kind: Literal['heisenberg']
    names: List[str]


class LamplighterStrategy(_Model):
    kind: Literal['lamplighter']
    names: List[str]


class FiniteGroupStrategy(_Model):
    kind: Literal['finite_group']
    table: List[List[int]]
    generators: List[Tuple[str, int]]
    inverses: Optional[Dict[str, str]] = None


class RewritingStrategy(_Model):
    kind: Literal['rewriting']
    generators: List[GeneratorModel]
    rules: List[Tuple[WordList, WordList]]
    amenable: bool = False


class DirectProductStrategy(_Model):
    kind: Literal['direct_product']
    left: 'Strategy'
    right: 'Strategy'


Strategy = Annotated[Union[FreeGroupStrategy, FreeAbelianStrategy, BaumslagSolitarStrategy, HeisenbergStrategy,
                           LamplighterStrategy, FiniteGroupStrategy, RewritingStrategy, DirectProductStrategy],
                     pyd.Field(discriminator='kind')]
DirectProductStrategy.model_rebuild()


class GroupDocument(_Model):
    schema_: Literal['group.v1'] = pyd.Field(alias='schema')
    generators: List[GeneratorModel]
    relations: List[Tuple[WordList, WordList]] = []
    strategy: Strategy


GroupRef = Union[str, GroupDocument]


class BallDocument(_Model):
    schema_: Literal['ball.v1'] = pyd.Field(alias='schema')
    group: GroupRef
    radius: int = pyd.Field(ge=0)
    elements: List[WordList]
    edges: List[Tuple[int, str, int]]


class PlainAlphabetModel(_Model):
    kind: Literal['plain']
    symbols: List[Symbol] = pyd.Field(min_length=1)


class ProductAlphabetModel(_Model):
    kind: Literal['product']
    sigma: List[Symbol] = pyd.Field(min_length=1)
    s_h: List[str]
    s_g: List[str]


class CheckerRef(_Model):
    id: str
    params: Dict[str, Any]


class ForbiddenConstraint(_Model):
    kind: Literal['forbidden']
    radius: int
    pattern: List[Tuple[WordList, Any]] = pyd.Field(min_length=1)


class CheckerConstraint(_Model):
    kind: Literal['checker']
    radius: int
    checker: CheckerRef


class SftDocument(_Model):
    schema_: Literal['sft.v1'] = pyd.Field(alias='schema')
    name: Optional[str] = None
    group: GroupRef
    alphabet: Annotated[Union[PlainAlphabetModel, ProductAlphabetModel], pyd.Field(discriminator='kind')]
    constraints: List[Annotated[Union[ForbiddenConstraint, CheckerConstraint], pyd.Field(discriminator='kind')]]


class PresentationModel(_Model):
    generators: List[GeneratorModel]
    relations: List[Tuple[WordList, WordList]] = []
    antirelations: List[Tuple[WordList, WordList]] = []


class LiftSpecDocument(_Model):
    schema_: Literal['liftspec.v1'] = pyd.Field(alias='schema')
    name: Optional[str] = None
    presentation: PresentationModel
    h_group: Optional[GroupRef] = None
    sigma: List[Symbol] = pyd.Field(min_length=1)
    forbidden: List[List[Tuple[WordList, Symbol]]] = []
    group: GroupRef
    s_g: List[str]


class TlaDocument(_Model):
    schema_: Literal['tla.v1'] = pyd.Field(alias='schema')
    h_group: GroupRef
    g_group: GroupRef
    radius: Optional[int] = None
    labels: List[Tuple[WordList, str, str]]


class QuotientDocument(_Model):
    schema_: Literal['quotient.v1'] = pyd.Field(alias='schema')
    degree: int = pyd.Field(ge=1)
    perms: Dict[str, List[int]]


class Rational(_Model):
    num: str
    den: str


class FrequencySystemModel(_Model):
    alphabet: List[Symbol]
    directions: List[str]
    allowed: Dict[str, List[Tuple[int, int]]]
    forbidden_symbols: List[int] = []
    amenable: bool = False


class FreqDocument(_Model):
    schema_: Literal['freq.v1'] = pyd.Field(alias='schema')
    system: FrequencySystemModel
    reduced: List[Tuple[List[int], List[int]]] = []
    outcome: Literal['Feasible', 'Infeasible']
    z: Optional[List[Rational]] = None
    flows: Optional[Dict[str, List[List[Rational]]]] = None
    farkas: Optional[List[Rational]] = None
    certifies_empty: Optional[bool] = None


class CertDocument(_Model):
    schema_: Literal['cert.v1'] = pyd.Field(alias='schema')
    kind: Literal['EmptyAtRadius', 'AdmissibleUpTo', 'PeriodicPoint', 'NoPeriodicPointUpTo',
                  'FrequencyInfeasible', 'TlaVerified']
    payload: Dict[str, Any]
    inputs_digest: str = pyd.Field(pattern=r'^[0-9a-f]{64}$')
    limits: Dict[str, Any] = {}
    version: str


class ManifestDocument(_Model):
    schema_: Literal['manifest.v1'] = pyd.Field(alias='schema')
    command: str
    inputs: Dict[str, str]
    parameters: Dict[str, Any]
    version: str
    outcome: str
    output_digest: Optional[str] = None
    started: str
    wall_time: float


SCHEMAS = {
    'group.v1': GroupDocument,
    'ball.v1': BallDocument,
    'sft.v1': SftDocument,
    'liftspec.v1': LiftSpecDocument,
    'tla.v1': TlaDocument,
    'quotient.v1': QuotientDocument,
    'freq.v1': FreqDocument,
    'cert.v1': CertDocument,
    'manifest.v1': ManifestDocument,
}


def validate(document: Any, expected: Optional[str] = None) -> pyd.BaseModel:
    """ Validates a document against its schema

    Args:
        document: the parsed JSON document
        expected: the schema the document must have, its own `schema` field otherwise

    Raises:
        SchemaError: if the document does not match
    """
    if not isinstance(document, Mapping):
        raise SchemaError(f"Expected a JSON object, got {type(document).__name__}")
    name = expected or document.get('schema')
    if name not in SCHEMAS:
        raise SchemaError(f"Unknown schema {name!r}")
    if document.get('schema') != name:
        raise SchemaError(f"Expected a {name} document, got {document.get('schema')!r}")
    try:
        return SCHEMAS[name].model_validate(document)
    except pyd.ValidationError as e:
        raise SchemaError(f"Invalid {name} document: {e}") from e


def parse(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Not a JSON document: {e}") from e


def _words(pairs) -> List[List[List[str]]]:
    return [[list(u), list(v)] for u, v in pairs]


def _generators(generators) -> List[Dict[str, Any]]:
    return [{'name': g.name, 'inverse': g.inverse} for g in generators]


def group_to_json(oracle: WordOracle) -> Dict[str, Any]:
    return {'schema': 'group.v1', 'generators': _generators(oracle.generators),
            'relations': _words(oracle.presentation.relations), 'strategy': oracle.to_spec()}


def _oracle(strategy: Mapping[str, Any]) -> WordOracle:
    kind = strategy['kind']
    if kind == 'free_group':
        return FreeGroup(strategy['rank'], strategy['names'])
    if kind == 'free_abelian':
        return FreeAbelian(strategy['rank'], strategy['names'])
    if kind == 'baumslag_solitar':
        return BaumslagSolitar1n(strategy['n'], strategy['names'])
    if kind == 'heisenberg':
        return Heisenberg(strategy['names'])
    if kind == 'lamplighter':
        return Lamplighter(strategy['names'])
    if kind == 'finite_group':
        return FiniteGroup(strategy['table'], dict(strategy['generators']), strategy.get('inverses'))
    if kind == 'rewriting':
        generators = [GeneratorSymbol(g['name'], g.get('inverse')) for g in strategy['generators']]
        return RewritingSystem(generators, strategy['rules'], strategy.get('amenable', False))
    if kind == 'direct_product':
        return DirectProduct(_oracle(strategy['left']), _oracle(strategy['right']))
    raise SchemaError(f"Unknown group strategy {kind!r}")


def group_from_json(document: Union[str, Mapping[str, Any]]) -> WordOracle:
    """ A word oracle from a `group.v1` document or a catalog group name """
    if isinstance(document, str):
        return zoo.lookup(document, 'group')
    validate(document, 'group.v1')
    oracle = _oracle(document['strategy'])
    declared = [g['name'] for g in document['generators']]
    if declared != list(oracle.names):
        raise SchemaError(f"The generators {declared} do not match the strategy generators {list(oracle.names)}")
    return oracle


def ball_to_json(window: Ball, oracle: WordOracle) -> Dict[str, Any]:
    return {'schema': 'ball.v1', 'group': group_to_json(oracle), 'radius': window.radius,
            'elements': [list(word) for word in window.words],
            'edges': [[source, letter, target] for source, letter, target in window.edges]}


def alphabet_to_json(alphabet: Alphabet) -> Dict[str, Any]:
    if isinstance(alphabet, ProductAlphabet):
        return {'kind': 'product', 'sigma': list(alphabet.sigma.symbols), 's_h': list(alphabet.s_h),
                's_g': list(alphabet.s_g)}
    return {'kind': 'plain', 'symbols': list(alphabet.symbols)}


def alphabet_from_json(document: Mapping[str, Any]) -> Alphabet:
    if document['kind'] == 'product':
        return ProductAlphabet(Alphabet(document['sigma']), document['s_h'], document['s_g'])
    return Alphabet(document['symbols'])


def sft_to_json(sft: Sft) -> Dict[str, Any]:
    """ The `sft.v1` document of an SFT, always with an inline group """
    document = {'schema': 'sft.v1', 'group': group_to_json(sft.oracle), 'alphabet': alphabet_to_json(sft.alphabet),
                'constraints': [constraint.to_json(sft.alphabet) for constraint in sft.constraints]}
    if sft.name is not None:
        document['name'] = sft.name
    return document


def _constraint(document: Mapping[str, Any], oracle: WordOracle, alphabet: Alphabet) -> LocalConstraint:
    if document['kind'] == 'forbidden':
        entries = []
        for word, value in document['pattern']:
            symbol = alphabet.from_json_symbol(value)
            if symbol not in alphabet:
                raise SymbolMismatch(f"{value!r} is not a symbol of {alphabet!r}")
            entries.append((oracle.check_word(word), symbol))
        return ForbiddenPattern(canonicalize_pattern(oracle, Pattern(tuple(entries))))
    return make_checker(document['checker']['id'], document['checker']['params'])


def sft_from_json(document: Union[str, Mapping[str, Any]]) -> Sft:
    """ An SFT from an `sft.v1` document or a catalog SFT name

    Raises:
        SchemaError: if the document is invalid, including semantic errors such as unknown generators
    """
    if isinstance(document, str):
        return zoo.lookup(document, 'sft')
    validate(document, 'sft.v1')
    try:
        oracle = group_from_json(document['group'])
        alphabet = alphabet_from_json(document['alphabet'])
        constraints = tuple(_constraint(constraint, oracle, alphabet) for constraint in document['constraints'])
    except SchemaError:
        raise
    except (SftLiftError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"Invalid sft.v1 document: {e}") from e
    return Sft(oracle, alphabet, constraints, document.get('name'))


def _presentation_to_json(pres: MonoidPresentation) -> Dict[str, Any]:
    return {'generators': _generators(pres.generators), 'relations': _words(pres.relations),
            'antirelations': _words(pres.antirelations)}


def liftspec_to_json(spec: LiftSpec) -> Dict[str, Any]:
    document = {'schema': 'liftspec.v1', 'presentation': _presentation_to_json(spec.presentation),
                'sigma': list(spec.sigma.symbols),
                'forbidden': [[[list(word), symbol] for word, symbol in pattern.entries] for pattern in spec.forbidden],
                'group': group_to_json(spec.group), 's_g': list(spec.s_g)}
    if spec.h_oracle is not None:
        document['h_group'] = group_to_json(spec.h_oracle)
    if spec.name is not None:
        document['name'] = spec.name
    return document


def liftspec_from_json(document: Union[str, Mapping[str, Any]]) -> LiftSpec:
    """ A lift specification from a `liftspec.v1` document or a catalog name """
    if isinstance(document, str):
        return zoo.lookup(document, 'liftspec')
    validate(document, 'liftspec.v1')
    try:
        pres_document = document['presentation']
        pres = MonoidPresentation(tuple(GeneratorSymbol(g['name'], g.get('inverse'))
                                        for g in pres_document['generators']),
                                  tuple(pres_document.get('relations', ())),
                                  tuple(pres_document.get('antirelations', ())))
        h_oracle = group_from_json(document['h_group']) if document.get('h_group') is not None else None
        forbidden = tuple(Pattern.of((word, symbol) for word, symbol in pattern)
                          for pattern in document.get('forbidden', ()))
        return LiftSpec(pres, Alphabet(document['sigma']), forbidden, group_from_json(document['group']),
                        tuple(document['s_g']), h_oracle, document.get('name'))
    except SchemaError:
        raise
    except (SftLiftError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"Invalid liftspec.v1 document: {e}") from e


def tla_to_json(action: FiniteData) -> Dict[str, Any]:
    """ The `tla.v1` document of an action given by its labels; elements are written as read-back words """
    g_oracle = action.g_oracle
    labels = sorted(([list(g_oracle.to_word(g)), h, label] for (g, h), label in action.labels.items()),
                    key=lambda entry: (len(entry[0]), entry[0], entry[1]))
    return {'schema': 'tla.v1', 'h_group': group_to_json(action.h_oracle), 'g_group': group_to_json(g_oracle),
            'radius': action.radius, 'labels': labels}


def tla_from_json(document: Mapping[str, Any]) -> FiniteData:
    validate(document, 'tla.v1')
    try:
        h_oracle = group_from_json(document['h_group'])
        g_oracle = group_from_json(document['g_group'])
        labels = {(g_oracle.normalize(word), h): label for word, h, label in document['labels']}
        return FiniteData(h_oracle, g_oracle, labels, document.get('radius'))
    except SchemaError:
        raise
    except (SftLiftError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"Invalid tla.v1 document: {e}") from e


def quotient_to_json(q: SchreierGraph) -> Dict[str, Any]:
    return dict(schema='quotient.v1', **q.to_json())


def quotient_from_json(document: Mapping[str, Any]) -> SchreierGraph:
    validate(document, 'quotient.v1')
    try:
        return SchreierGraph(document['perms'], document['degree'])
    except SftLiftError as e:
        raise SchemaError(f"Invalid quotient.v1 document: {e}") from e


def run_manifest(command: str, inputs: Mapping[str, str], parameters: Mapping[str, Any], outcome: str,
                 started: str, wall_time: float, output_digest: Optional[str] = None) -> Dict[str, Any]:
    """ The `manifest.v1` document written next to every output """
    from sft_lift import __version__
    document = {'schema': 'manifest.v1', 'command': command, 'inputs': dict(inputs), 'parameters': dict(parameters),
                'version': __version__, 'outcome': outcome, 'started': started, 'wall_time': wall_time}
    if output_digest is not None:
        document['output_digest'] = output_digest
    return document
