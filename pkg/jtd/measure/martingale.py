import dataclasses
import typing

from jtd.model.params import RegimeParams

MARTINGALE_TOLERANCE = 1e-12


@dataclasses.dataclass(frozen=True)
class MartingaleReport(object):
    """
    Per-state residuals of a martingale condition; the process is a martingale iff both vanish.
    """
    residuals: typing.Tuple[float, float]
    form: str
    tolerance: float = MARTINGALE_TOLERANCE

    @property
    def is_martingale(self) -> bool:
        return all(abs(r) <= self.tolerance for r in self.residuals)

    def as_dict(self) -> typing.Dict[str, typing.Any]:
        return {'form': self.form, 'is_martingale': self.is_martingale, 'residuals': list(self.residuals)}


def check_martingale_drift(params: RegimeParams) -> MartingaleReport:
    """
    The jump telegraph process T + J is a martingale iff c_i + lambda_i h_i = 0 in both states.
    """
    residuals = tuple(c + lam * h for c, lam, h in zip(params.velocities, params.intensities, params.jumps))
    return MartingaleReport(residuals=residuals, form='drift')


def check_martingale_exponential(params: RegimeParams) -> MartingaleReport:
    """
    The stochastic exponential of T + J + D is a martingale iff c_i + sigma_i^2 / 2 + lambda_i h_i = 0 in both states.
    """
    residuals = tuple(c + 0.5 * s ** 2 + lam * h for c, s, lam, h in
                      zip(params.velocities, params.volatilities, params.intensities, params.jumps))
    return MartingaleReport(residuals=residuals, form='exponential')
