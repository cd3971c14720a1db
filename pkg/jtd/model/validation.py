import collections
import math
import typing

from jtd.model.params import MarketModel, RegimeParams
from jtd.util.registry import KeyRegistry


Model = typing.Union[MarketModel, RegimeParams]
ViolationGenerator = typing.Generator["Violation", None, None]


class ModelError(ValueError):
    """
    Exception that is raised when model parameters violate an invariant.
    """

    def __init__(self, violations: typing.Iterable["Violation"]):
        self.violations = list(violations)
        super(ModelError, self).__init__("; ".join(str(v) for v in self.violations))


class Violation(object):
    """
    A violated model invariant.
    """
    __slots__ = ('check', 'subject', 'message')

    def __init__(self, check: "Check", subject: str, message: str):
        """
        :param check: The check that found the violation.
        :param subject: What the violation is about, e.g. `asset 1` or `switching`.
        :param message: The violated invariant.
        """
        self.check = check
        self.subject = subject
        self.message = message

    @property
    def key(self) -> str:
        return self.check.key

    def as_dict(self) -> typing.Dict[str, str]:
        return {'check': self.key, 'subject': self.subject, 'message': self.message}

    def __repr__(self):
        return f"<Violation {self}>"

    def __str__(self):
        return f"{self.subject}: {self.message}"


class Check(object):
    """
    Base class for model invariant checks.
    """
    key: str = ''
    name: str = ''
    description: str = ''

    #: Whether the check only applies when telegraph densities are requested.
    densities_only: bool = False

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        """
        Runs the check on the given market. Yields a violation for every broken invariant.

        :param model: The market to check.
        :return: Generator of violations.
        """
        raise NotImplementedError()

    def violation(self, subject: str, message: str) -> Violation:
        return Violation(self, subject, message)


# Registry of the available checks
checks = KeyRegistry()


def _asset_subject(m: int) -> str:
    return f"asset {m}"


@checks.register
class FiniteCheck(Check):
    key = 'finite'
    name = "Finite parameters"
    description = "Every parameter is a finite number."

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        shared = {'lambda0': model.lambda0, 'lambda1': model.lambda1, 'r0': model.r0, 'r1': model.r1}
        for name, value in shared.items():
            if not math.isfinite(value):
                yield self.violation('market', f"{name} is not finite ({value})")

        for m, asset in enumerate(model.assets, start=1):
            for name in ('s0', 'c0', 'c1', 'sigma0', 'sigma1', 'h0', 'h1'):
                value = getattr(asset, name)
                if not math.isfinite(value):
                    yield self.violation(_asset_subject(m), f"{name} is not finite ({value})")


@checks.register
class IntensityCheck(Check):
    key = 'intensity'
    name = "Switching intensities"
    description = "Both switching intensities are strictly positive."

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        for i, lam in enumerate(model.intensities):
            if not lam > 0:
                yield self.violation('switching', f"lambda{i} <= 0 (lambda{i} = {lam})")


@checks.register
class JumpCheck(Check):
    key = 'jump'
    name = "Jump sizes"
    description = "Relative jump sizes exceed -1, so prices stay positive."

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        for m, asset in enumerate(model.assets, start=1):
            for i, h in enumerate(asset.jumps):
                if not h > -1:
                    yield self.violation(_asset_subject(m), f"h{i} <= -1 (h{i} = {h})")


@checks.register
class RateCheck(Check):
    key = 'rate'
    name = "Interest rates"
    description = "Interest rates are nonnegative."

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        for i, r in enumerate(model.rates):
            if not r >= 0:
                yield self.violation('bond', f"r{i} < 0 (r{i} = {r})")


@checks.register
class PriceCheck(Check):
    key = 'price'
    name = "Initial prices"
    description = "Initial asset prices are strictly positive."

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        for m, asset in enumerate(model.assets, start=1):
            if not asset.s0 > 0:
                yield self.violation(_asset_subject(m), f"s0 <= 0 (s0 = {asset.s0})")


@checks.register
class VelocityOrderCheck(Check):
    key = 'velocity_order'
    name = "Velocity order"
    description = "The velocity of state 0 strictly exceeds the velocity of state 1 (telegraph densities only)."
    densities_only = True

    def __call__(self, model: MarketModel) -> ViolationGenerator:
        for m, asset in enumerate(model.assets, start=1):
            if not asset.c0 > asset.c1:
                yield self.violation(_asset_subject(m), f"c0 must exceed c1 (c0 = {asset.c0}, c1 = {asset.c1})")


class ValidationReport(object):
    """
    The violations found in a model. An empty report means the model is valid.
    """

    def __init__(self, violations: typing.Iterable[Violation]):
        self.violations = list(violations)
        self.violations_by_check = collections.defaultdict(list)

        for violation in self.violations:
            self.violations_by_check[violation.key].append(violation)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def messages(self) -> typing.List[str]:
        return [str(v) for v in self.violations]

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return {'valid': self.is_valid, 'violations': [v.as_dict() for v in self.violations]}

    def raise_for_violations(self) -> None:
        if self.violations:
            raise ModelError(self.violations)

    def __bool__(self):
        return self.is_valid

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


def _as_market(model: Model) -> MarketModel:
    if isinstance(model, RegimeParams):
        return MarketModel.from_regime(model)
    return model


def validate_model(model: Model, densities: bool = False) -> ValidationReport:
    """
    Runs every registered check on the model. Never mutates the model and never raises for invalid parameters.

    :param model: A market, or the per-state parameters of a single process.
    :param densities: Whether telegraph densities will be requested, which adds the velocity order check.
    :return: The report listing the violated invariants.
    """
    market = _as_market(model)
    violations = []

    for check_cls in checks.all():
        if check_cls.densities_only and not densities:
            continue
        violations.extend(check_cls()(market))

    return ValidationReport(violations)


def require_valid(model: Model, densities: bool = False) -> None:
    """
    Raises a `ModelError` if the model violates an invariant.

    :param model: A market, or the per-state parameters of a single process.
    :param densities: Whether telegraph densities will be requested.
    """
    validate_model(model, densities=densities).raise_for_violations()
