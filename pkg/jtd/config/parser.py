"""
Reads market configurations. JSON is tried first; YAML is the fallback so hand-written files may use either. The
parser only checks the shape of the document and the types of the values. Model invariants such as positive
intensities are left to `jtd.model.validate_model`.
"""
import json
import logging
import typing

import yaml

from jtd.config import DEFAULT_CONTROLS, ConfigError, MeasureSpec, ModelConfig
from jtd.model.params import AssetParams, MarketModel


logger = logging.getLogger(__name__)

Stream = typing.Union[typing.AnyStr, typing.IO]

ASSET_KEYS = ('s0', 'c0', 'c1', 'sigma0', 'sigma1', 'h0', 'h1')
MEASURE_KEYS = {
    'family': ('theta0', 'theta1'),
    'explicit': ('c0_star', 'c1_star', 'sigma0_star', 'sigma1_star'),
    'change-of-state': ('k0', 'k1'),
}
FLOAT_CONTROLS = ('tolerance',)
INT_CONTROLS = ('quadrature_nodes', 'max_terms', 'seed', 'n_paths', 'chunk_size', 'start_state')


def _join(path: str, key: typing.Union[str, int]) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _mapping(value: typing.Any, path: str) -> typing.Mapping[str, typing.Any]:
    if not isinstance(value, dict):
        raise ConfigError(f"{path or 'configuration'}: expected a mapping, got {type(value).__name__}", path)
    return value


def _keys(data: typing.Mapping[str, typing.Any], path: str, allowed: typing.Iterable[str],
          required: typing.Iterable[str] = ()) -> None:
    allowed = set(allowed)
    for key in data:
        if key not in allowed:
            raise ConfigError(f"{_join(path, str(key))}: unknown key", _join(path, str(key)))
    for key in required:
        if key not in data:
            raise ConfigError(f"{_join(path, key)}: missing required key", _join(path, key))


def _number(value: typing.Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}", path)
    return float(value)


def _integer(value: typing.Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}", path)
    return value


class ConfigParser(object):
    """
    Parser for market configuration files.
    """

    def __init__(self):
        self._Loader = None
        self._init_yaml()

    def _init_yaml(self):
        """
        Initializes the YAML loader. Chooses the LibYAML C implementation when available.
        """
        native = hasattr(yaml, 'CSafeLoader')
        self._Loader = yaml.CSafeLoader if native else yaml.SafeLoader

    def parse_file(self, path: str) -> ModelConfig:
        """
        :param path: The configuration file.
        :return: The parsed configuration.
        """
        try:
            with open(path) as file:
                return self.parse_stream(file)
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e.strerror}") from e

    def parse_stream(self, stream: typing.IO) -> ModelConfig:
        return self.parse_str(stream.read())

    def parse_str(self, val: str) -> ModelConfig:
        return self.parse_data(self._read(val))

    def _read(self, val: str) -> typing.Any:
        try:
            return json.loads(val)
        except json.JSONDecodeError as e:
            logger.debug("Not JSON (%s), trying YAML.", e)
        try:
            return yaml.load(val, Loader=self._Loader)
        except yaml.YAMLError as e:
            raise ConfigError(f"malformed configuration: {e}") from e

    def parse_data(self, data: typing.Any) -> ModelConfig:
        """
        Builds the configuration from an already decoded document.
        """
        data = _mapping(data, '')
        _keys(data, '', ('switching', 'rates', 'assets', 'measure', 'controls'), ('switching', 'assets'))

        switching = _mapping(data['switching'], 'switching')
        _keys(switching, 'switching', ('lambda0', 'lambda1'), ('lambda0', 'lambda1'))
        rates = _mapping(data.get('rates', {}), 'rates')
        _keys(rates, 'rates', ('r0', 'r1'))

        assets = data['assets']
        if not isinstance(assets, list) or not 1 <= len(assets) <= 2:
            raise ConfigError("assets: expected a list of one or two assets", 'assets')

        market = MarketModel(
            lambda0=_number(switching['lambda0'], 'switching.lambda0'),
            lambda1=_number(switching['lambda1'], 'switching.lambda1'),
            asset1=self._asset(assets[0], 'assets[0]'),
            asset2=self._asset(assets[1], 'assets[1]') if len(assets) == 2 else None,
            r0=_number(rates.get('r0', 0.0), 'rates.r0'),
            r1=_number(rates.get('r1', 0.0), 'rates.r1'),
        )
        measure = self._measure(data['measure']) if data.get('measure') is not None else None
        controls = self._controls(data.get('controls') or {})
        logger.debug("Parsed a market with %d asset(s).", len(market.assets))
        return ModelConfig(market=market, measure=measure, controls_scope=DEFAULT_CONTROLS.child(**controls))

    @staticmethod
    def _asset(data: typing.Any, path: str) -> AssetParams:
        data = _mapping(data, path)
        _keys(data, path, ASSET_KEYS, ('s0', 'c0', 'c1'))
        return AssetParams(**{key: _number(value, _join(path, key)) for key, value in data.items()})

    @staticmethod
    def _measure(data: typing.Any) -> MeasureSpec:
        data = _mapping(data, 'measure')
        for mode, keys in MEASURE_KEYS.items():
            if set(data) == set(keys):
                return MeasureSpec(mode=mode, values={k: _number(data[k], _join('measure', k)) for k in keys})
        expected = ', '.join('{' + ', '.join(keys) + '}' for keys in MEASURE_KEYS.values())
        raise ConfigError(f"measure: expected exactly one of {expected}", 'measure')

    @staticmethod
    def _controls(data: typing.Any) -> typing.Dict[str, typing.Any]:
        data = _mapping(data, 'controls')
        _keys(data, 'controls', FLOAT_CONTROLS + INT_CONTROLS)
        controls = {}
        for key, value in data.items():
            path = _join('controls', key)
            value = _number(value, path) if key in FLOAT_CONTROLS else _integer(value, path)
            if key == 'start_state' and value not in (0, 1):
                raise ConfigError(f"{path}: expected 0 or 1, got {value}", path)
            elif key == 'seed' and value < 0:
                raise ConfigError(f"{path}: expected a nonnegative seed, got {value}", path)
            elif key not in ('start_state', 'seed') and not value > 0:
                raise ConfigError(f"{path}: expected a positive value, got {value}", path)
            controls[key] = value
        return controls
