"""Lifetime distribution catalog with a uniform numeric contract.

Every distribution exposes cdf, pdf, survival, quantile, mean, and sampling,
plus finite-or-infinite support endpoints that integration routines rely on.
Closed forms are used wherever the family admits them; the base class fills
in bisection quantiles and survival-function means for the rest.

Transforms (affine rescaling, proportional reversed hazard, independent sum)
wrap an existing distribution and preserve the same contract, so measure code
never needs to distinguish primitive from derived families.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from scipy.special import betainc, betaincinv

from .errors import DomainError, UnsupportedError
from .quadrature import QuadConfig, integrate

__all__ = [
    "AffineTransformed",
    "Beta",
    "Degenerate",
    "Distribution",
    "Exponential",
    "Frechet",
    "LogUniform",
    "ParetoType",
    "PrhrTransformed",
    "TriangularSum",
    "Uniform",
    "UniformSum",
    "Weibull",
    "affine",
    "independent_sum",
    "make",
    "parse_spec",
    "prhr",
]

_QUANTILE_TOL = 1e-10


class Distribution:
    """Base class: subclasses set family, params, lower, upper, cdf, pdf."""

    family: str = "abstract"

    def __init__(self):
        self.params: dict = {}
        self.lower: float = 0.0
        self.upper: float = math.inf

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def pdf(self, x: float) -> float:
        raise NotImplementedError

    def survival(self, x: float) -> float:
        return 1.0 - self.cdf(x)

    def quantile(self, p: float) -> float:
        """Inverse CDF by bracketed bisection (subclasses override with
        closed forms where available)."""
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        if p == 0.0:
            return self.lower
        if p == 1.0:
            return self.upper
        lo = self.lower
        if math.isinf(self.upper):
            hi = max(lo + 1.0, 1.0)
            for _ in range(400):
                if self.cdf(hi) >= p:
                    break
                hi = lo + 2.0 * (hi - lo)
            else:
                raise DomainError(f"could not bracket quantile({p})")
        else:
            hi = self.upper
        while hi - lo > _QUANTILE_TOL * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) < p:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def mean(self) -> float:
        """E[X] = lower + integral of the survival function over the support."""
        res = integrate(self.survival, self.lower, self.upper,
                        QuadConfig(abs_tol=1e-10, rel_tol=1e-9))
        if res.diverged:
            return math.inf
        return self.lower + res.value

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Inverse-transform sampling."""
        u = rng.random(n)
        return np.array([self.quantile(float(ui)) for ui in u])

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.family}({inner})"


class Uniform(Distribution):
    """Uniform law on [0, scale]."""

    family = "uniform"

    def __init__(self, scale: float = 1.0):
        super().__init__()
        if not (math.isfinite(scale) and scale > 0):
            raise DomainError(f"uniform scale must be positive, got {scale}")
        self.scale = float(scale)
        self.params = {"scale": self.scale}
        self.lower, self.upper = 0.0, self.scale

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        if x >= self.scale:
            return 1.0
        return x / self.scale

    def pdf(self, x):
        return 1.0 / self.scale if 0.0 <= x <= self.scale else 0.0

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        return p * self.scale

    def mean(self):
        return 0.5 * self.scale


class Exponential(Distribution):
    """Exponential law with rate parameter."""

    family = "exponential"

    def __init__(self, rate: float = 1.0):
        super().__init__()
        if not (math.isfinite(rate) and rate > 0):
            raise DomainError(f"exponential rate must be positive, got {rate}")
        self.rate = float(rate)
        self.params = {"rate": self.rate}

    def cdf(self, x):
        return -math.expm1(-self.rate * x) if x > 0.0 else 0.0

    def survival(self, x):
        return math.exp(-self.rate * x) if x > 0.0 else 1.0

    def pdf(self, x):
        return self.rate * math.exp(-self.rate * x) if x >= 0.0 else 0.0

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        if p == 1.0:
            return math.inf
        return -math.log1p(-p) / self.rate

    def mean(self):
        return 1.0 / self.rate


class Frechet(Distribution):
    """Frechet law F(x) = exp(-scale * x**(-shape)) on x > 0.

    The mean is finite only for shape > 1.
    """

    family = "frechet"

    def __init__(self, shape: float, scale: float = 1.0):
        super().__init__()
        if not (math.isfinite(shape) and shape > 0):
            raise DomainError(f"frechet shape must be positive, got {shape}")
        if not (math.isfinite(scale) and scale > 0):
            raise DomainError(f"frechet scale must be positive, got {scale}")
        self.shape, self.scale = float(shape), float(scale)
        self.params = {"shape": self.shape, "scale": self.scale}

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        return math.exp(-self.scale * x ** (-self.shape))

    def pdf(self, x):
        if x <= 0.0:
            return 0.0
        return self.scale * self.shape * x ** (-self.shape - 1.0) * self.cdf(x)

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return math.inf
        return (self.scale / (-math.log(p))) ** (1.0 / self.shape)

    def mean(self):
        if self.shape <= 1.0:
            return math.inf
        return self.scale ** (1.0 / self.shape) * math.gamma(1.0 - 1.0 / self.shape)


class ParetoType(Distribution):
    """Heavy-tailed law F(x) = 1 - (1 + x)**(-k) on x >= 0 (Lomax form)."""

    family = "pareto"

    def __init__(self, k: float):
        super().__init__()
        if not (math.isfinite(k) and k > 0):
            raise DomainError(f"pareto index must be positive, got {k}")
        self.k = float(k)
        self.params = {"k": self.k}

    def cdf(self, x):
        return 1.0 - (1.0 + x) ** (-self.k) if x > 0.0 else 0.0

    def survival(self, x):
        return (1.0 + x) ** (-self.k) if x > 0.0 else 1.0

    def pdf(self, x):
        return self.k * (1.0 + x) ** (-self.k - 1.0) if x >= 0.0 else 0.0

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        if p == 1.0:
            return math.inf
        return (1.0 - p) ** (-1.0 / self.k) - 1.0

    def mean(self):
        return 1.0 / (self.k - 1.0) if self.k > 1.0 else math.inf


class Weibull(Distribution):
    """Weibull law F(x) = 1 - exp(-(x / scale)**shape)."""

    family = "weibull"

    def __init__(self, scale: float = 1.0, shape: float = 1.0):
        super().__init__()
        if not (math.isfinite(scale) and scale > 0):
            raise DomainError(f"weibull scale must be positive, got {scale}")
        if not (math.isfinite(shape) and shape > 0):
            raise DomainError(f"weibull shape must be positive, got {shape}")
        self.scale, self.shape = float(scale), float(shape)
        self.params = {"scale": self.scale, "shape": self.shape}

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        return -math.expm1(-((x / self.scale) ** self.shape))

    def survival(self, x):
        if x <= 0.0:
            return 1.0
        return math.exp(-((x / self.scale) ** self.shape))

    def pdf(self, x):
        if x <= 0.0:
            return 0.0
        z = (x / self.scale) ** self.shape
        return self.shape / x * z * math.exp(-z)

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        if p == 1.0:
            return math.inf
        return self.scale * (-math.log1p(-p)) ** (1.0 / self.shape)

    def mean(self):
        return self.scale * math.gamma(1.0 + 1.0 / self.shape)


class LogUniform(Distribution):
    """Log-uniform law on [a, b], density proportional to 1/x."""

    family = "loguniform"

    def __init__(self, a: float, b: float):
        super().__init__()
        if not (math.isfinite(a) and math.isfinite(b) and 0 < a < b):
            raise DomainError(f"loguniform requires 0 < a < b, got ({a}, {b})")
        self.a, self.b = float(a), float(b)
        self.params = {"a": self.a, "b": self.b}
        self.lower, self.upper = self.a, self.b
        self._log_ratio = math.log(self.b / self.a)

    def cdf(self, x):
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return 1.0
        return math.log(x / self.a) / self._log_ratio

    def pdf(self, x):
        if self.a <= x <= self.b:
            return 1.0 / (x * self._log_ratio)
        return 0.0

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        return self.a * (self.b / self.a) ** p

    def mean(self):
        return (self.b - self.a) / self._log_ratio


class Beta(Distribution):
    """Beta law on [0, 1] with positive shape parameters p and q."""

    family = "beta"

    def __init__(self, p: float, q: float):
        super().__init__()
        if not (math.isfinite(p) and p > 0 and math.isfinite(q) and q > 0):
            raise DomainError(f"beta shapes must be positive, got ({p}, {q})")
        self.p, self.q = float(p), float(q)
        self.params = {"p": self.p, "q": self.q}
        self.lower, self.upper = 0.0, 1.0
        self._log_beta = math.lgamma(self.p) + math.lgamma(self.q) - math.lgamma(self.p + self.q)

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return float(betainc(self.p, self.q, x))

    def pdf(self, x):
        if not 0.0 < x < 1.0:
            return 0.0
        return math.exp(
            (self.p - 1.0) * math.log(x)
            + (self.q - 1.0) * math.log1p(-x)
            - self._log_beta
        )

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        return float(betaincinv(self.p, self.q, p))

    def mean(self):
        return self.p / (self.p + self.q)


class TriangularSum(Distribution):
    """Sum of two independent standard uniforms: triangular on [0, 2]."""

    family = "triangularsum"

    def __init__(self):
        super().__init__()
        self.params = {}
        self.lower, self.upper = 0.0, 2.0

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        if x >= 2.0:
            return 1.0
        if x <= 1.0:
            return 0.5 * x * x
        return 1.0 - 0.5 * (2.0 - x) ** 2

    def pdf(self, x):
        if 0.0 <= x <= 1.0:
            return x
        if 1.0 < x <= 2.0:
            return 2.0 - x
        return 0.0

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        if p <= 0.5:
            return math.sqrt(2.0 * p)
        return 2.0 - math.sqrt(2.0 * (1.0 - p))

    def mean(self):
        return 1.0


class Degenerate(Distribution):
    """Point mass at c; every cumulative measure of it is zero."""

    family = "degenerate"

    def __init__(self, c: float = 0.0):
        super().__init__()
        if not math.isfinite(c) or c < 0:
            raise DomainError(f"degenerate point must be finite and >= 0, got {c}")
        self.c = float(c)
        self.params = {"c": self.c}
        self.lower = self.upper = self.c

    def cdf(self, x):
        return 1.0 if x >= self.c else 0.0

    def pdf(self, x):
        return 0.0

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        return self.c

    def mean(self):
        return self.c

    def sample(self, n, rng):
        return np.full(n, self.c)


class AffineTransformed(Distribution):
    """Y = scale * X + shift with scale > 0 and shift >= 0."""

    family = "affine"

    def __init__(self, base: Distribution, scale: float, shift: float = 0.0):
        super().__init__()
        if not (math.isfinite(scale) and scale > 0):
            raise DomainError(f"affine scale must be positive, got {scale}")
        if not (math.isfinite(shift) and shift >= 0):
            raise DomainError(f"affine shift must be >= 0, got {shift}")
        self.base = base
        self.scale, self.shift = float(scale), float(shift)
        self.params = {"base": base, "scale": self.scale, "shift": self.shift}
        self.lower = self.scale * base.lower + self.shift
        self.upper = self.scale * base.upper + self.shift

    def cdf(self, x):
        return self.base.cdf((x - self.shift) / self.scale)

    def survival(self, x):
        return self.base.survival((x - self.shift) / self.scale)

    def pdf(self, x):
        return self.base.pdf((x - self.shift) / self.scale) / self.scale

    def quantile(self, p):
        return self.scale * self.base.quantile(p) + self.shift

    def mean(self):
        return self.scale * self.base.mean() + self.shift

    def sample(self, n, rng):
        return self.scale * self.base.sample(n, rng) + self.shift


class PrhrTransformed(Distribution):
    """Proportional reversed hazard tilt: G(x) = F(x)**delta, delta > 0.

    Integer delta is the distribution of the maximum of delta iid copies.
    """

    family = "prhr"

    def __init__(self, base: Distribution, delta: float):
        super().__init__()
        if not (math.isfinite(delta) and delta > 0):
            raise DomainError(f"prhr exponent must be positive, got {delta}")
        self.base = base
        self.delta = float(delta)
        self.params = {"base": base, "delta": self.delta}
        self.lower, self.upper = base.lower, base.upper

    def cdf(self, x):
        return self.base.cdf(x) ** self.delta

    def pdf(self, x):
        F = self.base.cdf(x)
        if F <= 0.0:
            return 0.0
        return self.delta * F ** (self.delta - 1.0) * self.base.pdf(x)

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        return self.base.quantile(p ** (1.0 / self.delta))


class UniformSum(Distribution):
    """Sum of independent Uniform(0, a) and Uniform(0, b), trapezoidal."""

    family = "uniformsum"

    def __init__(self, a: float, b: float):
        super().__init__()
        if not (math.isfinite(a) and a > 0 and math.isfinite(b) and b > 0):
            raise DomainError(f"uniformsum widths must be positive, got ({a}, {b})")
        self.a, self.b = (float(min(a, b)), float(max(a, b)))
        self.params = {"a": self.a, "b": self.b}
        self.lower, self.upper = 0.0, self.a + self.b

    def cdf(self, x):
        a, b = self.a, self.b
        if x <= 0.0:
            return 0.0
        if x >= a + b:
            return 1.0
        if x <= a:
            return x * x / (2.0 * a * b)
        if x <= b:
            return (x - 0.5 * a) / b
        return 1.0 - (a + b - x) ** 2 / (2.0 * a * b)

    def pdf(self, x):
        a, b = self.a, self.b
        if x < 0.0 or x > a + b:
            return 0.0
        if x <= a:
            return x / (a * b)
        if x <= b:
            return 1.0 / b
        return (a + b - x) / (a * b)

    def mean(self):
        return 0.5 * (self.a + self.b)


class _ConvolutionSum(Distribution):
    """Numeric convolution of two bounded distributions."""

    family = "sum"

    def __init__(self, d1: Distribution, d2: Distribution):
        super().__init__()
        self.d1, self.d2 = d1, d2
        self.params = {"first": d1, "second": d2}
        self.lower = d1.lower + d2.lower
        self.upper = d1.upper + d2.upper
        self._cfg = QuadConfig(abs_tol=1e-9, rel_tol=1e-8)

    def cdf(self, x):
        if x <= self.lower:
            return 0.0
        if x >= self.upper:
            return 1.0
        lo = self.d2.lower
        hi = min(self.d2.upper, x - self.d1.lower)
        if hi <= lo:
            return 0.0
        res = integrate(lambda y: self.d1.cdf(x - y) * self.d2.pdf(y), lo, hi, self._cfg)
        return min(1.0, max(0.0, res.value))

    def pdf(self, x):
        if x <= self.lower or x >= self.upper:
            return 0.0
        lo = max(self.d2.lower, x - self.d1.upper)
        hi = min(self.d2.upper, x - self.d1.lower)
        if hi <= lo:
            return 0.0
        res = integrate(lambda y: self.d1.pdf(x - y) * self.d2.pdf(y), lo, hi, self._cfg)
        return max(0.0, res.value)


def affine(base: Distribution, scale: float, shift: float = 0.0) -> Distribution:
    """Rescale and shift a lifetime: Y = scale * X + shift."""
    return AffineTransformed(base, scale, shift)


def prhr(base: Distribution, delta: float) -> Distribution:
    """Proportional reversed hazard transform G = F**delta."""
    return PrhrTransformed(base, delta)


def independent_sum(d1: Distribution, d2: Distribution) -> Distribution:
    """Distribution of X + Y for independent X and Y with bounded supports."""
    if math.isinf(d1.upper) or math.isinf(d2.upper):
        raise UnsupportedError("independent_sum requires bounded supports")
    if isinstance(d1, Uniform) and isinstance(d2, Uniform):
        return UniformSum(d1.scale, d2.scale)
    return _ConvolutionSum(d1, d2)


_FACTORIES = {
    "uniform": Uniform,
    "exponential": Exponential,
    "frechet": Frechet,
    "pareto": ParetoType,
    "weibull": Weibull,
    "loguniform": LogUniform,
    "beta": Beta,
    "triangularsum": TriangularSum,
    "degenerate": Degenerate,
}

# Conventional one-letter parameter names accepted alongside the
# constructor keywords, e.g. uniform:a=2 for Uniform(scale=2).
_PARAM_ALIASES = {
    "uniform": {"a": "scale"},
    "frechet": {"a": "shape", "b": "scale"},
    "exponential": {"lam": "rate"},
}


def make(name: str, **params) -> Distribution:
    """Construct a catalog distribution by family name."""
    key = name.strip().lower()
    if key not in _FACTORIES:
        raise DomainError(
            f"unknown distribution {name!r}; known: {sorted(_FACTORIES)}"
        )
    aliases = _PARAM_ALIASES.get(key, {})
    fixed = {}
    for pname, value in params.items():
        canonical = aliases.get(pname, pname)
        if canonical in fixed:
            raise DomainError(f"duplicate parameter {canonical!r} for {name!r}")
        fixed[canonical] = value
    try:
        return _FACTORIES[key](**fixed)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {name!r}: {exc}") from exc


def parse_spec(spec: str) -> Distribution:
    """Parse a distribution spec string.

    Primitive form: ``name:param=value,param=value`` (``triangularsum`` takes
    no parameters). Wrapped forms compose transforms around an inner spec:

    * ``affine(<spec>; scale=2, shift=3)``
    * ``prhr(<spec>; delta=2)``
    """
    s = spec.strip()
    for wrapper in ("affine", "prhr"):
        prefix = wrapper + "("
        if s.lower().startswith(prefix) and s.endswith(")"):
            body = s[len(prefix):-1]
            if ";" not in body:
                raise DomainError(
                    f"{wrapper} spec needs ';' between inner spec and parameters: {spec!r}"
                )
            inner_spec, param_part = body.rsplit(";", 1)
            base = parse_spec(inner_spec)
            kwargs = _parse_params(param_part)
            if wrapper == "affine":
                return affine(base, **kwargs)
            return prhr(base, **kwargs)
    if ":" in s:
        name, param_part = s.split(":", 1)
        return make(name, **_parse_params(param_part))
    return make(s)


def _parse_params(text: str) -> dict:
    kwargs = {}
    text = text.strip()
    if not text:
        return kwargs
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise DomainError(f"expected param=value, got {piece!r}")
        key, value = piece.split("=", 1)
        try:
            kwargs[key.strip()] = float(value)
        except ValueError as exc:
            raise DomainError(f"non-numeric value in {piece!r}") from exc
    return kwargs
