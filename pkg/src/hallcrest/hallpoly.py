"""From finite-field counts to Euler characteristics.

Counts are sampled at several primes, interpolated exactly, and evaluated at
q = 1.  A count is only trusted once a held-out prime confirms the fitted
polynomial: in the default adaptive mode the ladder grows one prime at a time
until the held-out check passes twice in a row (hard cap on ladder length); an
explicitly requested prime ladder is sampled in full with a single held-out
check on its largest prime.  Instability is a loud diagnostic, never a silent
fallback, since polynomiality of these counts is only guaranteed for the
validated inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .countkit import count_ext_with_middle, count_filtrations
from .errors import InputError, InstabilityError, InternalCheckError
from .gfarith import PrimeField, QPolynomial, interpolate
from .repcore import DEFAULT_PRIMES, IndecTable, IsoClass

DEFAULT_LADDER = DEFAULT_PRIMES


@dataclass(frozen=True)
class ChiConfig:
    """Sampling policy for one Euler-characteristic computation.

    primes=None selects the adaptive mode, growing along base_ladder (default
    ladder when unset) until two consecutive held-out passes; an explicit
    primes tuple is sampled in full (at least two primes, all valid for the
    presentation's relation coefficients) with one held-out check.
    """

    primes: tuple[int, ...] | None = None
    strict: bool = True
    min_samples: int = 3
    consecutive: int = 2
    max_primes: int = 8
    base_ladder: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.primes is not None:
            object.__setattr__(self, "primes", tuple(sorted(set(self.primes))))
        if self.base_ladder is not None:
            object.__setattr__(self, "base_ladder", tuple(sorted(set(self.base_ladder))))
        if self.min_samples < 2:
            raise InputError("need at least 2 samples to interpolate")
        if self.consecutive < 1 or self.max_primes < self.min_samples:
            raise InputError("inconsistent sampling policy")

    def resolved_ladder(self, presentation) -> tuple[int, ...]:
        excluded = presentation.excluded_primes()
        if self.primes is not None:
            if len(self.primes) < 2:
                raise InputError("an explicit prime ladder needs at least 2 primes")
            for p in self.primes:
                try:
                    PrimeField(p)
                except ValueError:
                    raise InputError(f"{p} is not a prime") from None
                if p in excluded:
                    raise InputError(
                        f"prime {p} is excluded by the relation coefficients"
                    )
            return self.primes
        base = self.base_ladder if self.base_ladder is not None else DEFAULT_LADDER
        for p in base:
            try:
                PrimeField(p)
            except ValueError:
                raise InputError(f"{p} is not a prime") from None
        ladder = tuple(p for p in base if p not in excluded)
        ladder = ladder[: self.max_primes]
        if len(ladder) < self.min_samples:
            raise InputError("prime ladder too short after exclusions")
        return ladder


@dataclass(frozen=True)
class ChiResult:
    """An interpolated count with its certificate.

    value is the evaluation at q = 1 (None only when unstable and not
    strict); samples are (prime, count) pairs; verification_prime is the
    held-out prime that confirmed the polynomial.
    """

    value: int | None
    polynomial: QPolynomial
    samples: tuple
    stable: bool
    verification_prime: int | None

    def as_dict(self):
        return {
            "value": self.value,
            "polynomial": str(self.polynomial),
            "coefficients": [str(c) for c in self.polynomial.coeffs],
            "samples": [[p, n] for p, n in self.samples],
            "stable": self.stable,
            "verification_prime": self.verification_prime,
        }


def _chi_from_samples(counter, table, config, describe):
    ladder = config.resolved_ladder(table.presentation)
    if config.primes is not None:
        samples = [(p, counter(p)) for p in ladder]
        poly, stable = interpolate(samples)
    else:
        samples = [(p, counter(p)) for p in ladder[: config.min_samples]]
        poly, stable = interpolate(samples)
        passes = 1 if stable else 0
        idx = config.min_samples
        while passes < config.consecutive and idx < len(ladder):
            samples.append((ladder[idx], counter(ladder[idx])))
            idx += 1
            poly, stable = interpolate(samples)
            passes = passes + 1 if stable else 0
        stable = passes >= config.consecutive
    if stable:
        val = poly.at_one()
        if not isinstance(val, Fraction):
            val = Fraction(val)
        if val.denominator != 1:
            raise InternalCheckError(
                f"{describe}: certified polynomial {poly} is not integral at q=1"
            )
        value = int(val)
    else:
        if config.strict:
            raise InstabilityError(
                f"{describe}: counts {samples} did not stabilize to a polynomial "
                f"(last fit {poly}); input is outside the validated envelope"
            )
        value = None
    return ChiResult(
        value=value,
        polynomial=poly,
        samples=tuple(samples),
        stable=stable,
        verification_prime=samples[-1][0] if stable else None,
    )


def _registry(table: IndecTable) -> dict:
    return table.cache.setdefault("chi_results", {})


def chi_filtration(classes, x: IsoClass, table: IndecTable, config: ChiConfig | None = None) -> ChiResult:
    """Euler characteristic of the variety of filtrations of x with
    subquotients classes[0] (bottom) up to classes[-1] (top)."""
    if config is None:
        config = ChiConfig()
    classes = tuple(table.validate_iso(c) for c in classes)
    x = table.validate_iso(x)
    key = ("filt", classes, x, config)
    reg = _registry(table)
    if key in reg:
        return reg[key]

    def counter(p):
        return count_filtrations(classes, table.rep_of(x, p), table)

    label = " <= ".join(str(c) for c in classes) or "0"
    result = _chi_from_samples(counter, table, config, f"chi V({label}; {x})")
    reg[key] = result
    return result


def chi_ext_middle(a: IsoClass, b: IsoClass, x: IsoClass, table: IndecTable,
                   config: ChiConfig | None = None) -> ChiResult:
    """Euler characteristic of the extensions of a by b with middle term x
    (a is the quotient of the extension, b the submodule)."""
    if config is None:
        config = ChiConfig()
    a = table.validate_iso(a)
    b = table.validate_iso(b)
    x = table.validate_iso(x)
    key = ("ext", a, b, x, config)
    reg = _registry(table)
    if key in reg:
        return reg[key]

    def counter(p):
        return count_ext_with_middle(
            table.rep_of(a, p), table.rep_of(b, p), x, table
        )

    result = _chi_from_samples(counter, table, config, f"chi Ext({a}, {b})_{x}")
    reg[key] = result
    return result


def cached_chi_keys(table: IndecTable):
    """Keys of every interpolation performed against this table so far."""
    return list(_registry(table).keys())


def cached_chi_items(table: IndecTable):
    """(key, ChiResult) pairs for every interpolation performed so far."""
    return list(_registry(table).items())


def rerun_chi(table: IndecTable, key, config: ChiConfig) -> ChiResult:
    """Re-run a cached chi computation under a different sampling policy."""
    kind = key[0]
    if kind == "filt":
        _, classes, x, _ = key
        return chi_filtration(classes, x, table, config)
    if kind == "ext":
        _, a, b, x, _ = key
        return chi_ext_middle(a, b, x, table, config)
    raise InputError(f"unknown chi cache kind {kind!r}")


def recompute_with_ladder(table: IndecTable, key, primes) -> ChiResult:
    """Re-run a cached chi computation on a different explicit prime ladder."""
    base: ChiConfig = key[-1]
    return rerun_chi(table, key, ChiConfig(primes=tuple(primes), strict=base.strict))
