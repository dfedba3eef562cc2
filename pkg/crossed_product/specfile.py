"""
Reading and writing algebra spec files (JSON).

A spec file declares generators, named parameters, the twist, an optional
pairing, optional quotient relations per alphabet, optional relation
operators and optional cross overrides. Scalars are exact: integers or
strings such as "1/2", "-3/4 i", "q" or "-q" for a declared parameter.
Decimals are rejected.
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .core import ALPHABET_A, ALPHABET_B, EMPTY, Letter, NCPoly, Scalar, Word, format_poly
from .cross import Cross, TwistMatrix
from .errors import CrossedProductError, SpecError
from .quadratic import Operator2, QuadraticAlgebra
from .utils.helpers import json_path, parse_json_field
from .wick import WickSpec

logger = logging.getLogger('crossed_product')

OPERATOR_NAMES = ('R', 'S', 'C')


@dataclass
class AlgebraSpecFile:
    """A validated spec file"""
    name: str
    a_names: Tuple[str, ...]
    b_names: Tuple[str, ...]
    twist: TwistMatrix
    b_conjugate: bool = True
    parameters: Dict[str, Scalar] = field(default_factory=dict)
    pairing: bool = False
    hermitian: bool = True
    relations: Dict[str, QuadraticAlgebra] = field(default_factory=dict)
    operators: Dict[str, Operator2] = field(default_factory=dict)
    overrides: Dict[Tuple[Word, Word], NCPoly] = field(default_factory=dict)

    @property
    def dim_a(self) -> int:
        return len(self.a_names)

    @property
    def dim_b(self) -> int:
        return len(self.b_names)

    def cross(self) -> Cross:
        pairing = {(i, i): 1 for i in range(1, self.dim_a + 1)} if self.pairing else {}
        return Cross.with_table(self.twist, self.overrides, pairing)

    def wick_spec(self, checked: Optional[bool] = None) -> WickSpec:
        """The Wick algebra of this spec; requires a pairing and equal dimensions"""
        if not self.pairing:
            raise SpecError(f"{self.name}: a Wick algebra needs \"pairing\": true")
        require = self.hermitian if checked is None else checked
        return WickSpec(self.dim_a, self.twist, require_star_cross=require)

    def algebra(self, alphabet: str) -> QuadraticAlgebra:
        """Quotient algebra on one side; free when no relations are declared"""
        if alphabet in self.relations:
            return self.relations[alphabet]
        dim = self.dim_a if alphabet == ALPHABET_A else self.dim_b
        return QuadraticAlgebra.free(dim, alphabet)

    def letter_name(self, letter: Letter) -> str:
        names = self.a_names if letter.is_a else self.b_names
        return names[letter.index - 1]

    def format_word(self, word: Word) -> str:
        if not word:
            return '1'
        return ' '.join(self.letter_name(letter) for letter in word)

    def format_poly(self, p: NCPoly) -> str:
        return format_poly(p, self.format_word)

    def parse_poly(self, text: str, where: str = '$') -> NCPoly:
        """Parse 'c1 w1 + c2 w2 ...' where each coefficient is optional"""
        return _WordParser(self.a_names, self.b_names).parse_poly_text(text, where, self.parameters)


class _WordParser:
    def __init__(self, a_names, b_names):
        self.lookup: Dict[str, Letter] = {}
        for i, name in enumerate(a_names, 1):
            self.lookup[name] = Letter(ALPHABET_A, i)
            self.lookup.setdefault(f"{name}*", Letter(ALPHABET_B, i))
        for i, name in enumerate(b_names, 1):
            self.lookup[name] = Letter(ALPHABET_B, i)

    def parse(self, text: str, where: str) -> Word:
        if not isinstance(text, str):
            raise SpecError(f"{where}: expected a word string, got {text!r}")
        tokens = text.split()
        if tokens in ([], ['1']):
            return EMPTY
        letters = []
        for token in tokens:
            if token not in self.lookup:
                raise SpecError(f"{where}: unknown generator '{token}'")
            letters.append(self.lookup[token])
        return Word(tuple(letters))

    def parse_terms(self, terms, where: str, parameters) -> NCPoly:
        """Polynomials as lists of [coefficient, word] pairs"""
        if not isinstance(terms, list):
            raise SpecError(f"{where}: expected a list of [coefficient, word] pairs")
        acc: Dict[Word, Scalar] = {}
        for n, term in enumerate(terms):
            here = json_path(where, n)
            if not isinstance(term, list) or len(term) != 2:
                raise SpecError(f"{here}: expected [coefficient, word]")
            coeff = parse_value(term[0], parameters, json_path(here, 0))
            word = self.parse(term[1], json_path(here, 1))
            acc[word] = acc.get(word, Scalar.zero()) + coeff
        return NCPoly(acc)

    def parse_poly_text(self, text: str, where: str, parameters) -> NCPoly:
        acc: Dict[Word, Scalar] = {}
        for chunk in _split_terms(text):
            sign, body = chunk
            tokens = body.split()
            coeff = Scalar.one()
            if tokens and tokens[0] not in self.lookup:
                coeff = parse_value(tokens[0].strip('()'), parameters, where)
                tokens = tokens[1:]
            word = self.parse(' '.join(tokens), where)
            acc[word] = acc.get(word, Scalar.zero()) + coeff * sign
        return NCPoly(acc)


def _split_terms(text: str) -> List[Tuple[int, str]]:
    """Split 'a - b + c' at top-level signs separated by spaces"""
    terms, sign, current = [], 1, []
    for token in text.split():
        if token in ('+', '-'):
            if current:
                terms.append((sign, ' '.join(current)))
                current = []
            sign = 1 if token == '+' else -1
        else:
            current.append(token)
    if current:
        terms.append((sign, ' '.join(current)))
    if not terms:
        raise SpecError(f"empty polynomial '{text}'")
    return terms


def parse_value(raw, parameters: Dict[str, Scalar], where: str) -> Scalar:
    """An exact scalar, a parameter name or a negated parameter name"""
    if isinstance(raw, bool):
        raise SpecError(f"{where}: expected a scalar, got {raw!r}")
    if isinstance(raw, int):
        return Scalar(Fraction(raw))
    if isinstance(raw, float):
        try:
            hint = f", write the rational {Fraction(str(raw))}"
        except ValueError:
            hint = ''
        raise SpecError(f"{where}: decimals are not accepted{hint}")
    if not isinstance(raw, str):
        raise SpecError(f"{where}: expected a scalar, got {raw!r}")
    text = raw.strip()
    negate = text.startswith('-') and text[1:].strip() in parameters
    name = text[1:].strip() if negate else text
    if name in parameters:
        value = parameters[name]
        return -value if negate else value
    try:
        return Scalar.parse(text)
    except SpecError as e:
        raise SpecError(f"{where}: {e}")


def _parse_names(data, where, errors) -> Optional[Tuple[str, ...]]:
    if not isinstance(data, list) or not data or not all(isinstance(n, str) and n for n in data):
        errors.append(f"{where}: expected a nonempty list of generator names")
        return None
    if len(set(data)) != len(data):
        errors.append(f"{where}: duplicate generator names")
        return None
    return tuple(data)


def parse_operator_data(data, parameters, where) -> Operator2:
    """An operator given as a list of rows or {"rows", "in", "out"}"""
    if isinstance(data, dict):
        rows = data.get('rows')
        in_dims, out_dims = data.get('in'), data.get('out')
    else:
        rows, in_dims, out_dims = data, None, None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SpecError(f"{where}: expected a matrix as a list of rows")
    values = [
        [parse_value(v, parameters, json_path(where, r, c)) for c, v in enumerate(row)]
        for r, row in enumerate(rows)
    ]
    try:
        return Operator2.from_rows(values, in_dims and tuple(in_dims), out_dims and tuple(out_dims))
    except CrossedProductError as e:
        raise SpecError(f"{where}: {e}")


def _parse_relations(data, alphabet, dim, parser, parameters, operators, where) -> QuadraticAlgebra:
    if not isinstance(data, dict):
        raise SpecError(f"{where}: expected an object")
    order: Tuple[int, ...] = ()
    if 'order' in data:
        names = data['order']
        if not isinstance(names, list):
            raise SpecError(f"{json_path(where, 'order')}: expected a list of generator names")
        lookup = {}
        for token in names:
            letter = parser.lookup.get(token)
            if letter is None or letter.alphabet != alphabet:
                raise SpecError(f"{json_path(where, 'order')}: unknown generator '{token}'")
            lookup[token] = letter.index
        order = tuple(lookup[t] for t in names)
        if sorted(order) != list(range(1, dim + 1)):
            raise SpecError(f"{json_path(where, 'order')}: must list every generator once")
    try:
        if 'operator' in data:
            raw = data['operator']
            if isinstance(raw, str):
                if raw not in operators:
                    raise SpecError(f"{json_path(where, 'operator')}: unknown operator '{raw}'")
                op = operators[raw]
            else:
                op = parse_operator_data(raw, parameters, json_path(where, 'operator'))
            if op.in_dims != (dim, dim):
                raise SpecError(f"{json_path(where, 'operator')}: operator does not act on {dim} generators")
            return QuadraticAlgebra.from_operator(op, alphabet, order)
        if 'rules' in data:
            rules = []
            for n, rule in enumerate(data['rules']):
                here = json_path(where, 'rules', n)
                if not isinstance(rule, dict) or 'lead' not in rule or 'rhs' not in rule:
                    raise SpecError(f"{here}: expected {{\"lead\": word, \"rhs\": terms}}")
                lead = parser.parse(rule['lead'], json_path(here, 'lead'))
                rhs = parser.parse_terms(rule['rhs'], json_path(here, 'rhs'), parameters)
                rules.append((lead, rhs))
            return QuadraticAlgebra.from_rules(dim, alphabet, rules, order)
        if 'polynomials' in data:
            polys = [
                parser.parse_terms(p, json_path(where, 'polynomials', n), parameters)
                for n, p in enumerate(data['polynomials'])
            ]
            return QuadraticAlgebra.from_relations(dim, alphabet, polys, order)
    except SpecError:
        raise
    except CrossedProductError as e:
        raise SpecError(f"{where}: {e}")
    raise SpecError(f"{where}: expected one of \"operator\", \"rules\" or \"polynomials\"")


def parse_spec_data(data: Dict[str, Any]) -> AlgebraSpecFile:
    """
    Validate a decoded spec file

    Raises:
        SpecError: every problem found, each prefixed with its JSON path
    """
    if not isinstance(data, dict):
        raise SpecError('$: a spec file must be a JSON object')
    errors: List[str] = []

    known = {'name', 'generators', 'parameters', 'twist', 'pairing', 'hermitian',
             'relations', 'operators', 'overrides'}
    for key in sorted(set(data) - known):
        errors.append(f"{key}: unknown field")

    name = data.get('name', 'unnamed')
    if not isinstance(name, str):
        errors.append('name: expected a string')
        name = 'unnamed'

    generators = data.get('generators')
    a_names = b_names = None
    b_conjugate = True
    if not isinstance(generators, dict) or 'A' not in generators:
        errors.append('generators: expected an object with an "A" list')
    else:
        a_names = _parse_names(generators['A'], 'generators.A', errors)
        if 'B' in generators:
            b_conjugate = False
            b_names = _parse_names(generators['B'], 'generators.B', errors)
            if a_names and b_names and set(a_names) & set(b_names):
                errors.append('generators.B: names shared with generators.A')
        elif a_names:
            b_names = tuple(f"{n}*" for n in a_names)

    parameters: Dict[str, Scalar] = {}
    raw_params = parse_json_field(data.get('parameters'), {})
    if not isinstance(raw_params, dict):
        errors.append('parameters: expected an object')
        raw_params = {}
    for key in sorted(raw_params):
        try:
            parameters[key] = parse_value(raw_params[key], {}, json_path('parameters', key))
        except SpecError as e:
            errors.extend(e.errors)

    if a_names is None or b_names is None:
        raise SpecError(errors or ['generators: invalid'])

    m, n = len(a_names), len(b_names)
    entries: Dict[Tuple[int, int, int, int], Scalar] = {}
    raw_twist = data.get('twist', [])
    if not isinstance(raw_twist, list):
        errors.append('twist: expected a list of [i, j, k, l, value] entries')
        raw_twist = []
    for pos, entry in enumerate(raw_twist):
        where = json_path('twist', pos)
        if not isinstance(entry, list) or len(entry) != 5:
            errors.append(f"{where}: expected [i, j, k, l, value]")
            continue
        i, j, k, l, raw = entry
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j, k, l)):
            errors.append(f"{where}: indices must be integers")
            continue
        if not (1 <= i <= n and 1 <= l <= n and 1 <= j <= m and 1 <= k <= m):
            errors.append(f"{where}: index out of range (A has {m}, B has {n} generators)")
            continue
        if (i, j, k, l) in entries:
            errors.append(f"{where}: duplicate entry ({i}, {j}, {k}, {l})")
            continue
        try:
            entries[(i, j, k, l)] = parse_value(raw, parameters, json_path(where, 4))
        except SpecError as e:
            errors.extend(e.errors)

    pairing = data.get('pairing', False)
    if not isinstance(pairing, bool):
        errors.append('pairing: expected true or false')
        pairing = False
    if pairing and m != n:
        errors.append(f"pairing: needs equally many A and B generators, got {m} and {n}")
    hermitian = data.get('hermitian', True)
    if not isinstance(hermitian, bool):
        errors.append('hermitian: expected true or false')
        hermitian = True
    if errors:
        raise SpecError(errors)

    twist = TwistMatrix.from_entries(m, n, entries)
    parser = _WordParser(a_names, b_names)

    operators: Dict[str, Operator2] = {}
    raw_ops = data.get('operators', {})
    if not isinstance(raw_ops, dict):
        errors.append('operators: expected an object')
        raw_ops = {}
    for key in sorted(raw_ops):
        if key not in OPERATOR_NAMES:
            errors.append(f"operators.{key}: unknown operator (use R, S or C)")
            continue
        try:
            operators[key] = parse_operator_data(raw_ops[key], parameters, json_path('operators', key))
        except SpecError as e:
            errors.extend(e.errors)

    relations: Dict[str, QuadraticAlgebra] = {}
    raw_rel = data.get('relations', {})
    if not isinstance(raw_rel, dict):
        errors.append('relations: expected an object keyed by "A" and "B"')
        raw_rel = {}
    for alphabet in sorted(raw_rel):
        if alphabet not in (ALPHABET_A, ALPHABET_B):
            errors.append(f"relations.{alphabet}: unknown alphabet")
            continue
        dim = m if alphabet == ALPHABET_A else n
        try:
            relations[alphabet] = _parse_relations(
                raw_rel[alphabet], alphabet, dim, parser, parameters, operators,
                json_path('relations', alphabet),
            )
        except SpecError as e:
            errors.extend(e.errors)

    overrides: Dict[Tuple[Word, Word], NCPoly] = {}
    for pos, item in enumerate(data.get('overrides', []) or []):
        where = json_path('overrides', pos)
        if not isinstance(item, dict) or not {'b', 'a', 'value'} <= set(item):
            errors.append(f"{where}: expected {{\"b\": word, \"a\": word, \"value\": terms}}")
            continue
        try:
            wb = parser.parse(item['b'], json_path(where, 'b'))
            wa = parser.parse(item['a'], json_path(where, 'a'))
            value = parser.parse_terms(item['value'], json_path(where, 'value'), parameters)
        except SpecError as e:
            errors.extend(e.errors)
            continue
        if not wb.is_over(ALPHABET_B) or not wa.is_over(ALPHABET_A):
            errors.append(f"{where}: b must be a B-word and a an A-word")
        elif not value.is_ordered():
            errors.append(f"{where}.value: every word must have A-letters before B-letters")
        elif (wb, wa) in overrides:
            errors.append(f"{where}: duplicate override")
        else:
            overrides[(wb, wa)] = value

    if errors:
        raise SpecError(errors)

    spec = AlgebraSpecFile(
        name=name, a_names=a_names, b_names=b_names, twist=twist, b_conjugate=b_conjugate,
        parameters=parameters, pairing=pairing, hermitian=hermitian, relations=relations,
        operators=operators, overrides=overrides,
    )
    if pairing and hermitian:
        try:
            spec.wick_spec()
        except CrossedProductError as e:
            raise SpecError(f"twist: {e} (set \"hermitian\": false to load it anyway)")
    logger.debug(f"Parsed spec {name}: {m} A-generators, {n} B-generators, {len(entries)} twist entries")
    return spec


def parse_spec_text(text: str) -> AlgebraSpecFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"line {e.lineno} column {e.colno}: invalid JSON ({e.msg})")
    return parse_spec_data(data)


def parse_spec(path) -> AlgebraSpecFile:
    """Read and validate a spec file"""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise SpecError(f"{path}: cannot read spec file ({e.strerror})")
    return parse_spec_text(text)


def _terms_data(spec: AlgebraSpecFile, p: NCPoly) -> List[List[str]]:
    return [[str(coeff), spec.format_word(word)] for word, coeff in p.items()]


def _operator_data(op: Operator2) -> Dict[str, Any]:
    return {
        'rows': [[str(v) for v in row] for row in op.rows()],
        'in': list(op.in_dims),
        'out': list(op.out_dims),
    }


def spec_to_data(spec: AlgebraSpecFile) -> Dict[str, Any]:
    """Decoded form of a spec with every scalar written as a literal"""
    generators = {'A': list(spec.a_names)}
    if not spec.b_conjugate:
        generators['B'] = list(spec.b_names)
    data: Dict[str, Any] = {
        'name': spec.name,
        'generators': generators,
        'parameters': {k: str(v) for k, v in sorted(spec.parameters.items())},
        'twist': [[i, j, k, l, str(v)] for (i, j, k, l), v in spec.twist.entries],
        'pairing': spec.pairing,
        'hermitian': spec.hermitian,
    }
    if spec.operators:
        data['operators'] = {k: _operator_data(v) for k, v in sorted(spec.operators.items())}
    if spec.relations:
        relations = {}
        for alphabet, algebra in sorted(spec.relations.items()):
            names = spec.a_names if alphabet == ALPHABET_A else spec.b_names
            relations[alphabet] = {
                'order': [names[i - 1] for i in algebra.rewrite.order],
                'rules': [
                    {'lead': spec.format_word(lead), 'rhs': _terms_data(spec, rhs)}
                    for lead, rhs in algebra.rewrite.rules
                ],
            }
        data['relations'] = relations
    if spec.overrides:
        data['overrides'] = [
            {'b': spec.format_word(wb), 'a': spec.format_word(wa), 'value': _terms_data(spec, value)}
            for (wb, wa), value in sorted(
                spec.overrides.items(), key=lambda item: (item[0][0].sort_key(), item[0][1].sort_key())
            )
        ]
    return data


def serialize_spec(spec: AlgebraSpecFile) -> str:
    return json.dumps(spec_to_data(spec), indent=2, sort_keys=True) + '\n'
