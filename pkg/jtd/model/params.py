import dataclasses
import typing


State = int  # 0 or 1
STATES: typing.Tuple[State, State] = (0, 1)


def check_state(state: State) -> State:
    """
    :param state: A state label.
    :return: The state label, if it is 0 or 1.
    """
    if state not in STATES:
        raise ValueError(f"States are labelled 0 and 1, got {state!r}.")
    return state


@dataclasses.dataclass(frozen=True)
class RegimeParams(object):
    """
    Per-state parameters of a jump telegraph-diffusion process and its bond.

    Time is measured in years: velocities, intensities and rates are per year, volatilities per square-root year and
    jump sizes are relative.
    """
    c0: float
    c1: float
    sigma0: float = 0.0
    sigma1: float = 0.0
    h0: float = 0.0
    h1: float = 0.0
    lambda0: float = 1.0
    lambda1: float = 1.0
    r0: float = 0.0
    r1: float = 0.0

    @property
    def velocities(self) -> typing.Tuple[float, float]:
        return self.c0, self.c1

    @property
    def volatilities(self) -> typing.Tuple[float, float]:
        return self.sigma0, self.sigma1

    @property
    def jumps(self) -> typing.Tuple[float, float]:
        return self.h0, self.h1

    @property
    def intensities(self) -> typing.Tuple[float, float]:
        return self.lambda0, self.lambda1

    @property
    def rates(self) -> typing.Tuple[float, float]:
        return self.r0, self.r1

    def replace(self, **changes) -> "RegimeParams":
        return dataclasses.replace(self, **changes)

    def relabelled(self) -> "RegimeParams":
        """
        :return: The same process with the labels of the two states swapped.
        """
        return RegimeParams(c0=self.c1, c1=self.c0, sigma0=self.sigma1, sigma1=self.sigma0, h0=self.h1, h1=self.h0,
                            lambda0=self.lambda1, lambda1=self.lambda0, r0=self.r1, r1=self.r0)


@dataclasses.dataclass(frozen=True)
class AssetParams(object):
    """
    The asset-specific part of a market: velocities, volatilities and jump sizes per state and the initial price.
    """
    s0: float
    c0: float
    c1: float
    sigma0: float = 0.0
    sigma1: float = 0.0
    h0: float = 0.0
    h1: float = 0.0

    @property
    def velocities(self) -> typing.Tuple[float, float]:
        return self.c0, self.c1

    @property
    def volatilities(self) -> typing.Tuple[float, float]:
        return self.sigma0, self.sigma1

    @property
    def jumps(self) -> typing.Tuple[float, float]:
        return self.h0, self.h1

    def replace(self, **changes) -> "AssetParams":
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class MarketModel(object):
    """
    One or two risky assets driven by the same switching flow and the same Brownian motion, plus a bond with
    state-dependent interest rates.
    """
    lambda0: float
    lambda1: float
    asset1: AssetParams
    asset2: typing.Optional[AssetParams] = None
    r0: float = 0.0
    r1: float = 0.0

    @property
    def assets(self) -> typing.Tuple[AssetParams, ...]:
        return tuple(a for a in (self.asset1, self.asset2) if a is not None)

    @property
    def intensities(self) -> typing.Tuple[float, float]:
        return self.lambda0, self.lambda1

    @property
    def rates(self) -> typing.Tuple[float, float]:
        return self.r0, self.r1

    @property
    def is_two_asset(self) -> bool:
        return self.asset2 is not None

    def asset(self, m: int = 1) -> AssetParams:
        """
        :param m: The asset number, 1 or 2.
        :return: The parameters of the asset.
        """
        if m == 1:
            return self.asset1
        if m == 2 and self.asset2 is not None:
            return self.asset2
        raise ValueError(f"The market has no asset {m}.")

    def regime(self, m: int = 1) -> RegimeParams:
        """
        :param m: The asset number, 1 or 2.
        :return: The per-state parameters of asset m combined with the shared switching flow and bond.
        """
        a = self.asset(m)
        return RegimeParams(c0=a.c0, c1=a.c1, sigma0=a.sigma0, sigma1=a.sigma1, h0=a.h0, h1=a.h1,
                            lambda0=self.lambda0, lambda1=self.lambda1, r0=self.r0, r1=self.r1)

    def replace(self, **changes) -> "MarketModel":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_regime(cls, params: RegimeParams, s0: float = 1.0) -> "MarketModel":
        """
        :param params: The per-state parameters.
        :param s0: The initial price.
        :return: A one-asset market.
        """
        asset = AssetParams(s0=s0, c0=params.c0, c1=params.c1, sigma0=params.sigma0, sigma1=params.sigma1,
                            h0=params.h0, h1=params.h1)
        return cls(lambda0=params.lambda0, lambda1=params.lambda1, asset1=asset, r0=params.r0, r1=params.r1)


@dataclasses.dataclass(frozen=True)
class MeasureShift(object):
    """
    Girsanov parameters of an equivalent measure: drift shift c*, jump shift h* = -c*/lambda, Brownian drift shift
    sigma*, and the induced switching intensities lambda* = lambda - c*.
    """
    c0_star: float
    c1_star: float
    h0_star: float
    h1_star: float
    sigma0_star: float
    sigma1_star: float
    lambda0_star: float
    lambda1_star: float

    @property
    def c_star(self) -> typing.Tuple[float, float]:
        return self.c0_star, self.c1_star

    @property
    def h_star(self) -> typing.Tuple[float, float]:
        return self.h0_star, self.h1_star

    @property
    def sigma_star(self) -> typing.Tuple[float, float]:
        return self.sigma0_star, self.sigma1_star

    @property
    def lambda_star(self) -> typing.Tuple[float, float]:
        return self.lambda0_star, self.lambda1_star

    def is_identity(self) -> bool:
        return self.c_star == (0.0, 0.0) and self.sigma_star == (0.0, 0.0)

    def as_dict(self) -> typing.Dict[str, float]:
        return dataclasses.asdict(self)

    @classmethod
    def from_intensities(cls, lambdas: typing.Tuple[float, float], lambda_star: typing.Tuple[float, float],
                         sigma_star: typing.Tuple[float, float]) -> "MeasureShift":
        """
        Builds the shift with prescribed new intensities. The drift and jump shifts follow from c* = lambda - lambda*
        and h* = -c*/lambda; lambda* is stored as given so consumers of the intensities never see rounding from the
        round trip.

        :param lambdas: The physical intensities.
        :param lambda_star: The intensities under the new measure.
        :param sigma_star: The Brownian drift shifts.
        :return: The shift.
        """
        c_star = tuple(lam - lam_star for lam, lam_star in zip(lambdas, lambda_star))
        h_star = tuple(-c / lam for c, lam in zip(c_star, lambdas))
        return cls(c0_star=c_star[0], c1_star=c_star[1], h0_star=h_star[0], h1_star=h_star[1],
                   sigma0_star=sigma_star[0], sigma1_star=sigma_star[1],
                   lambda0_star=lambda_star[0], lambda1_star=lambda_star[1])

    @classmethod
    def from_drifts(cls, lambdas: typing.Tuple[float, float], c_star: typing.Tuple[float, float],
                    sigma_star: typing.Tuple[float, float]) -> "MeasureShift":
        """
        Builds the shift from the drift shifts c*.

        :param lambdas: The physical intensities.
        :param c_star: The drift shifts.
        :param sigma_star: The Brownian drift shifts.
        :return: The shift.
        """
        h_star = tuple(-c / lam for c, lam in zip(c_star, lambdas))
        lambda_star = tuple(lam - c for lam, c in zip(lambdas, c_star))
        return cls(c0_star=c_star[0], c1_star=c_star[1], h0_star=h_star[0], h1_star=h_star[1],
                   sigma0_star=sigma_star[0], sigma1_star=sigma_star[1],
                   lambda0_star=lambda_star[0], lambda1_star=lambda_star[1])

    @classmethod
    def identity(cls, lambdas: typing.Tuple[float, float]) -> "MeasureShift":
        return cls.from_drifts(lambdas, (0.0, 0.0), (0.0, 0.0))


@dataclasses.dataclass(frozen=True)
class Atom(object):
    """
    A point mass of a distribution: the probability `weight` placed at `location`.
    """
    weight: float
    location: float
