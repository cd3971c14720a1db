import dataclasses
import typing

from jtd.measure.report import resolve_measure
from jtd.model.params import MarketModel, MeasureShift
from jtd.util.scope import Scope


class ConfigError(Exception):
    """
    Exception that is raised when a configuration file cannot be read or does not match the schema.
    """

    def __init__(self, message, path=None, *args):
        self.path = path
        super(ConfigError, self).__init__(message, *args)


DEFAULT_CONTROLS = Scope(
    tolerance=1e-12,
    quadrature_nodes=256,
    max_terms=400,
    seed=20080101,
    n_paths=100000,
    chunk_size=50000,
    start_state=0,
)


@dataclasses.dataclass(frozen=True)
class RunControls(object):
    """
    Numerical settings of a run: pricing tolerance, quadrature size, series cap and the Monte Carlo seed, path count,
    chunk size and initial state.
    """
    tolerance: float
    quadrature_nodes: int
    max_terms: int
    seed: int
    n_paths: int
    chunk_size: int
    start_state: int

    @classmethod
    def from_scope(cls, scope: Scope) -> "RunControls":
        return cls(**{field.name: scope[field.name] for field in dataclasses.fields(cls)})

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class MeasureSpec(object):
    """
    A measure named in a configuration file, resolved against the market it belongs to.
    """
    mode: str
    values: typing.Mapping[str, float]

    def resolve(self, market: MarketModel) -> MeasureShift:
        if self.mode == 'explicit':
            shift = MeasureShift.from_drifts(market.intensities,
                                             (self.values['c0_star'], self.values['c1_star']),
                                             (self.values['sigma0_star'], self.values['sigma1_star']))
            return resolve_measure(market, self.mode, shift=shift)
        return resolve_measure(market, self.mode, **self.values)

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return {'mode': self.mode, **self.values}


@dataclasses.dataclass(frozen=True)
class ModelConfig(object):
    """
    A parsed configuration file: the market, the optional measure and the run controls given in the file. Unpacks as
    `(market, measure, controls)`.
    """
    market: MarketModel
    measure: typing.Optional[MeasureSpec] = None
    controls_scope: Scope = dataclasses.field(default_factory=lambda: DEFAULT_CONTROLS)

    @property
    def controls(self) -> RunControls:
        return RunControls.from_scope(self.controls_scope)

    def controls_with(self, **flags) -> RunControls:
        """
        :param flags: Command-line values; `None` leaves the file value or default in place.
        :return: The run controls with the flags taking precedence.
        """
        return RunControls.from_scope(self.controls_scope.child(**flags))

    def __iter__(self):
        yield self.market
        yield self.measure
        yield self.controls


from jtd.config.parser import ConfigParser  # noqa: E402
