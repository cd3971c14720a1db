import datetime
import itertools
import sys
import typing
from contextlib import contextmanager
from copy import copy

from jtd import version
from jtd.config import ConfigError, ConfigParser, ModelConfig, RunControls
from jtd.measure.report import MeasureReport, describe_measure
from jtd.model.params import MarketModel, MeasureShift
from jtd.model.validation import ValidationReport, validate_model
from jtd.montecarlo import estimators, paths, payoffs
from jtd.pricing.call import CallPricingRequest, PricingBreakdown, price_call


def format_version(*args: typing.Union[int, str]) -> str:
    """
    Formats a version consisting of multiple segments into a string.

    If a segment is an integer, it will be separated from the preceding segment with a dot. If a segment is a string,
    it will be separated with a dash.

    :param args: The segments representing the version.
    :return: The string representation of the version.
    """
    if len(args) == 0:
        raise ValueError("Empty versions are not allowed.")

    result = str(args[0])

    for arg in args[1:]:
        result += '.' if isinstance(arg, int) else '-'
        result += str(arg)

    return result


class JTDMeta(type):
    """
    Metaclass for the JTD object containing information that should be globally accessible.
    """

    @property
    def version(cls) -> str:
        """The version number of the installed package."""
        return format_version(*version.VERSION)

    @property
    def build(cls) -> str:
        """The build number of the installed package."""
        return f"{version.BUILD:0>6d}"

    @property
    def platform(cls) -> str:
        """Platform specifics of the current runtime."""
        return f"Python {format_version(*sys.version_info)} on {sys.platform}"

    @property
    def threads(cls) -> int:
        """The number of Monte Carlo worker threads."""
        return paths.thread_count()


class JTD(object, metaclass=JTDMeta):
    """
    Application instance holding the command-line options and the timers of a run.
    """

    def __init__(self):
        self._options: typing.Dict[str, typing.Any] = {}
        self._timers: typing.Dict[str, typing.Tuple[datetime.datetime, typing.Optional[datetime.datetime]]] = {}

    @property
    def options(self) -> typing.Dict[str, typing.Any]:
        return copy(self._options)

    def set_options(self, **kwargs) -> None:
        self._options.update(**kwargs)

    def build_config(self) -> "RunConfig":
        """
        Builds a run configuration from the options of this app.
        """
        return RunConfig(**self.options)

    def start_timer(self, key: str) -> None:
        self._timers[key] = (datetime.datetime.now(), None)

    def stop_timer(self, key: str) -> None:
        try:
            self._timers[key] = (self._timers[key][0], datetime.datetime.now())
        except KeyError:
            pass

    def get_time(self, key: str) -> datetime.timedelta:
        """
        Returns the run time of a timer. If the timer has not been stopped the current time is used.

        :param key: The name of the timer.
        :return: The run time of the timer.
        """
        start = self._timers[key][0]
        end = self._timers[key][1] or datetime.datetime.now()
        return end - start

    def get_times(self) -> typing.Mapping[str, datetime.timedelta]:
        """
        :return: The run times of all stopped timers.
        """
        return {key: value[1] - value[0] for key, value in self._timers.items() if value[1] is not None}

    @contextmanager
    def time(self, key: str):
        """Starts and stops a timer with the given key around a `with` block."""
        self.start_timer(key)
        yield
        self.stop_timer(key)


class RunConfig(object):
    """
    A run configuration. Every step returns a new configuration, so a run is described declaratively:

        RunConfig(seed=7).load('market.json').validate().measure().price(100.0, 1.0)

    The keyword options are run controls given on the command line; they take precedence over the `controls` of the
    configuration file.
    """

    def __init__(self, **options):
        self.options = options

        self._config: typing.Optional[ModelConfig] = None
        self._report: typing.Optional[ValidationReport] = None
        self._measure: typing.Optional[MeasureReport] = None

    def load(self, path: str) -> "RunConfig":
        """
        Parses a configuration file.

        :param path: The path of the file.
        """
        return self.use(ConfigParser().parse_file(path))

    def use(self, config: ModelConfig) -> "RunConfig":
        rc = copy(self)
        rc._config, rc._report, rc._measure = config, None, None
        return rc

    def validate(self, densities: bool = False) -> "RunConfig":
        """
        Checks the model invariants. The report is kept; nothing is raised.

        :param densities: Whether telegraph densities will be requested.
        """
        rc = copy(self)
        rc._report = validate_model(rc.config.market, densities=densities)
        return rc

    def measure(self, mode: typing.Optional[str] = None, **values) -> "RunConfig":
        """
        Resolves the risk-neutral measure. Without a mode the measure of the configuration file is used; failing that
        a two-asset market is completed.

        :param mode: One of `jtd.measure.MODES`.
        :param values: The parameters of the mode.
        """
        rc = copy(self)
        spec = rc.config.measure
        if mode is None and spec is not None:
            mode, values = spec.mode, dict(spec.values)
        elif mode is None:
            if not rc.market.is_two_asset:
                raise ConfigError("a one-asset market needs a measure in the configuration or on the command line")
            mode = 'complete'
        if mode == 'complete' and not rc.market.is_two_asset:
            raise ConfigError("completing the market needs two assets")

        if mode == 'explicit':
            if spec is None or spec.mode != 'explicit':
                raise ConfigError("the explicit measure is read from the configuration file")
            values = {'shift': spec.resolve(rc.market)}
        rc._measure = describe_measure(rc.market, mode, **values)
        return rc

    @property
    def config(self) -> ModelConfig:
        if self._config is None:
            raise ValueError("There is no configuration, run load() first.")
        return self._config

    @property
    def market(self) -> MarketModel:
        return self.config.market

    @property
    def controls(self) -> RunControls:
        return self.config.controls_with(**self.options)

    def report(self) -> ValidationReport:
        if self._report is None:
            raise ValueError("There is no validation report, run validate() first.")
        return self._report

    def measure_report(self) -> MeasureReport:
        if self._measure is None:
            raise ValueError("There is no measure, run measure() first.")
        return self._measure

    def shift(self) -> MeasureShift:
        """
        :return: The resolved measure shift. Raises the measure error when the market has none.
        """
        report = self.measure_report()
        if report.error is not None:
            raise report.error
        return report.shift

    def request(self, strike: float, maturity: float) -> CallPricingRequest:
        """
        :return: The pricing request for a call on asset 1 under the resolved measure.
        """
        controls = self.controls
        return CallPricingRequest(self.market, strike, maturity, start_state=controls.start_state, shift=self.shift(),
                                  tolerance=controls.tolerance, quadrature_nodes=controls.quadrature_nodes,
                                  max_terms=controls.max_terms)

    def price(self, strike: float, maturity: float) -> PricingBreakdown:
        """
        Prices a call on asset 1 with the analytic series.
        """
        return price_call(self.request(strike, maturity))

    def price_mc(self, strike: float, maturity: float) -> estimators.EstimatorResult:
        """
        Prices a call on asset 1 by simulation under the resolved measure.
        """
        controls = self.controls
        return estimators.estimate_discounted_payoff(self.market, self.shift(), payoffs.create('call', strike=strike),
                                                     maturity, controls.n_paths, controls.seed,
                                                     start_state=controls.start_state, chunk_size=controls.chunk_size)

    def simulate(self, horizon: float, risk_neutral: bool = False) -> estimators.SimulationSummary:
        """
        Simulates the market and summarises the paths.

        :param horizon: The horizon of the paths.
        :param risk_neutral: Whether to simulate under the resolved measure instead of the physical one.
        """
        controls = self.controls
        return estimators.summarize(self.market, horizon, controls.n_paths, controls.seed,
                                    start_state=controls.start_state,
                                    measure=self.shift() if risk_neutral else None, chunk_size=controls.chunk_size)

    def paths(self, horizon: float, limit: int, risk_neutral: bool = False) -> typing.Iterator[paths.PathRecord]:
        """
        :return: The first `limit` paths of `simulate` with the same settings.
        """
        controls = self.controls
        records = paths.simulate_paths(self.market, self.shift() if risk_neutral else None, controls.start_state,
                                       horizon, controls.n_paths, controls.seed, chunk_size=controls.chunk_size)
        return itertools.islice(records, limit)
