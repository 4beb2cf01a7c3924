"""Lower-bound instances that force Any Fit policies into expensive packings.

Three families are generated:

* ``anyfit``  - every Any Fit policy opens dk bins for the first batch and then
  keeps each of them alive for mu more time with one tiny late item.
* ``nextfit`` - Next Fit opens 1 + (k - 1)d bins, each pinned by a long item.
* ``mtf``     - Move To Front (d = 1) opens 2n bins, each pinned by a long item.

Each family comes with the optimum's upper bound and the ratio it certifies.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional
import settings
from core.bounds import opt_exact
from core.engine import cost_of, simulate
from core.errors import ConstraintViolationError, UsageError
from core.model import Instance, Item, ONE, ZERO, fits, parse_scalar, render_scalar, vec_sum
from core.policies import PolicyKind
from core.utils.utilities import NamedEnum


class Family(NamedEnum):
    AnyFitLB = "anyfit"
    NextFitLB = "nextfit"
    MtfLB = "mtf"


DEFAULT_POLICY = {
    Family.AnyFitLB: PolicyKind.FirstFit,
    Family.NextFitLB: PolicyKind.NextFit,
    Family.MtfLB: PolicyKind.MoveToFront,
}


@dataclass(frozen=True)
class AdversarialSpec:
    """``k`` is the group size; for the ``mtf`` family it is the parameter n."""
    family: Family
    d: int
    k: int
    mu: Fraction
    epsilon: Optional[Fraction] = None
    epsilon_prime: Optional[Fraction] = None

    @property
    def n(self) -> int:
        return self.k


def default_epsilons(family: Family, d: int, k: int) -> tuple[Optional[Fraction], Optional[Fraction]]:
    family = Family(family)
    problems = []
    if d < 1:
        problems.append(f"d must be at least 1, got {d}")
    if k < 1:
        problems.append(f"k must be at least 1, got {k}")
    if family == Family.NextFitLB and (k < 2 or k % 2):
        problems.append(f"k must be even and at least 2, got {k}")
    if family == Family.MtfLB and d != 1:
        problems.append(f"the mtf family is one-dimensional, got d={d}")
    if problems:
        raise ConstraintViolationError(f"No default epsilons for family '{family}'", problems)

    if family == Family.AnyFitLB:
        epsilon = Fraction(1, 3 * d * d * k)
        return epsilon, epsilon / 3
    if family == Family.NextFitLB:
        return Fraction(1, 8 * d * d * k), Fraction(1, 2 * d * k)
    return None, None


def make_spec(
        family: Family,
        d: int,
        k: int,
        mu,
        epsilon=None,
        epsilon_prime=None
) -> AdversarialSpec:
    """Spec with the default epsilons filled in for whichever of the two is not given."""
    family = Family(family)
    mu = parse_scalar(mu)
    if family != Family.MtfLB and (epsilon is None or epsilon_prime is None):
        default, default_prime = default_epsilons(family, d, k)
        epsilon = default if epsilon is None else epsilon
        epsilon_prime = default_prime if epsilon_prime is None else epsilon_prime
    spec = AdversarialSpec(
        family,
        d,
        k,
        mu,
        parse_scalar(epsilon) if epsilon is not None else None,
        parse_scalar(epsilon_prime) if epsilon_prime is not None else None
    )
    validate_spec(spec)
    return spec


def spec_violations(spec: AdversarialSpec) -> list[str]:
    d, k, mu, eps, eps_p = spec.d, spec.k, spec.mu, spec.epsilon, spec.epsilon_prime
    problems = []
    if mu < 1:
        problems.append(f"mu must be at least 1, got {mu}")
    if spec.family == Family.MtfLB:
        if d != 1:
            problems.append(f"the mtf family is one-dimensional, got d={d}")
        if k < 1:
            problems.append(f"n must be at least 1, got {k}")
        return problems

    if d < 1:
        problems.append(f"d must be at least 1, got {d}")
    if eps is None or eps_p is None:
        problems.append("epsilon and epsilon_prime are required")
        return problems
    if not (0 < eps < 1 and 0 < eps_p < 1):
        problems.append(f"epsilon ({eps}) and epsilon_prime ({eps_p}) must lie in (0, 1)")
    if spec.family == Family.AnyFitLB:
        if k < 1:
            problems.append(f"k must be at least 1, got {k}")
        if not eps > eps_p:
            problems.append(f"epsilon > epsilon_prime fails: {eps} <= {eps_p}")
        if not d * d * eps * k < 1:
            problems.append(f"d^2 * epsilon * k < 1 fails: {d * d * eps * k}")
        if not d * eps > 2 * eps_p:
            problems.append(f"d * epsilon > 2 * epsilon_prime fails: {d * eps} <= {2 * eps_p}")
        if not eps * (1 + d) < 1:
            problems.append(f"epsilon * (1 + d) < 1 fails: {eps * (1 + d)}")
    else:
        if k < 2 or k % 2:
            problems.append(f"k must be even and at least 2, got {k}")
        if not eps_p > 2 * d * eps:
            problems.append(f"epsilon_prime > 2 * d * epsilon fails: {eps_p} <= {2 * d * eps}")
        if not eps_p * d * k < 1:
            problems.append(f"epsilon_prime * d * k < 1 fails: {eps_p * d * k}")
    return problems


def validate_spec(spec: AdversarialSpec):
    problems = spec_violations(spec)
    if problems:
        raise ConstraintViolationError(f"Invalid '{spec.family}' construction", problems)


def _group_size(spec: AdversarialSpec, index: int, big: Fraction) -> tuple[Fraction, ...]:
    """Odd item ``index`` (1-based) of group i carries ``big`` in dimension i, epsilon elsewhere."""
    group = (index + 1) // 2
    dimension = (group - 1) // spec.k
    return tuple(big if j == dimension else spec.epsilon for j in range(spec.d))


def _metadata(spec: AdversarialSpec, **extra) -> dict:
    metadata = {'family': str(spec.family), 'd': spec.d, 'k': spec.k, 'mu': render_scalar(spec.mu)}
    if spec.epsilon is not None:
        metadata['epsilon'] = render_scalar(spec.epsilon)
        metadata['epsilon_prime'] = render_scalar(spec.epsilon_prime)
    metadata.update(extra)
    return metadata


def gen_anyfit_lb(spec: AdversarialSpec) -> Instance:
    validate_spec(spec)
    if spec.family != Family.AnyFitLB:
        raise UsageError(f"Expected an anyfit spec, got '{spec.family}'")
    d, k, eps, eps_p = spec.d, spec.k, spec.epsilon, spec.epsilon_prime
    # the first batch outlives time 1 by epsilon_prime so the late items arrive while it is still packed
    first_departure = 1 + eps_p
    filler = (d * eps - eps_p,) * d
    items = []
    for index in range(1, 2 * d * k + 1):
        size = filler if index % 2 == 0 else _group_size(spec, index, 1 - d * eps)
        items.append(Item(index, ZERO, first_departure, size))
    late = tuple(
        Item(2 * d * k + index, ONE, 1 + spec.mu, (eps_p,) * d)
        for index in range(1, d * k + 1)
    )
    instance = Instance(
        d,
        tuple(items) + late,
        metadata=_metadata(spec, timing_adjustment=render_scalar(eps_p))
    )
    problems = _late_items_misfit(instance, len(items), late)
    if problems:
        raise ConstraintViolationError("Late items do not fit every first-batch bin", problems)
    return instance


def _late_items_misfit(instance: Instance, first_batch: int, late: tuple[Item, ...]) -> list[str]:
    """Pack the first batch with First Fit and check each late item fits every resulting bin."""
    head = Instance(instance.dimension, instance.items[:first_batch])
    trace = simulate(head, PolicyKind.FirstFit)
    sizes = {item.id: item.size for item in head.items}
    problems = []
    for record in trace.bins:
        load = vec_sum((sizes[item_id] for item_id, _ in record.placements), instance.dimension)
        for item in late:
            if not fits(load, item.size, instance.capacity):
                problems.append(f"item {item.id} does not fit bin {record.bin_id} with load {load}")
    return problems


def gen_nextfit_lb(spec: AdversarialSpec) -> Instance:
    validate_spec(spec)
    if spec.family != Family.NextFitLB:
        raise UsageError(f"Expected a nextfit spec, got '{spec.family}'")
    d, k, eps = spec.d, spec.k, spec.epsilon
    long_size = (spec.epsilon_prime,) * d
    items = []
    for index in range(1, 2 * d * k + 1):
        if index % 2 == 0:
            items.append(Item(index, ZERO, spec.mu, long_size))
        else:
            items.append(Item(index, ZERO, ONE, _group_size(spec, index, Fraction(1, 2) - d * eps)))
    return Instance(d, tuple(items), metadata=_metadata(spec))


def gen_mtf_lb(n: int, mu) -> Instance:
    spec = AdversarialSpec(Family.MtfLB, 1, n, parse_scalar(mu))
    validate_spec(spec)
    items = []
    for index in range(1, 4 * n + 1):
        if index % 2:
            items.append(Item(index, ZERO, ONE, (Fraction(1, 2),)))
        else:
            items.append(Item(index, ZERO, spec.mu, (Fraction(1, 2 * n),)))
    return Instance(1, tuple(items), metadata=_metadata(spec))


def generate(spec: AdversarialSpec) -> Instance:
    if spec.family == Family.AnyFitLB:
        return gen_anyfit_lb(spec)
    if spec.family == Family.NextFitLB:
        return gen_nextfit_lb(spec)
    return gen_mtf_lb(spec.n, spec.mu)


def opt_upper(spec: AdversarialSpec) -> Fraction:
    """Cost of the explicit offline packing used to bound the optimum."""
    if spec.family == Family.AnyFitLB:
        return spec.k + 1 + spec.mu
    if spec.family == Family.NextFitLB:
        return spec.mu + Fraction(spec.k, 2)
    return spec.mu + spec.n


def predicted_ratio(spec: AdversarialSpec) -> Fraction:
    d, k, mu = spec.d, spec.k, spec.mu
    if spec.family == Family.AnyFitLB:
        return d * k * (mu + 1) / (k + mu + 1)
    if spec.family == Family.NextFitLB:
        return (1 + (k - 1) * d) * mu / (mu + Fraction(k, 2))
    return 2 * spec.n * mu / (mu + spec.n)


def limit_ratio(spec: AdversarialSpec) -> Fraction:
    """Value the predicted ratio approaches as k (or n) grows without bound."""
    if spec.family == Family.AnyFitLB:
        return (spec.mu + 1) * spec.d
    if spec.family == Family.NextFitLB:
        return 2 * spec.mu * spec.d
    return 2 * spec.mu


def timing_slack(spec: AdversarialSpec) -> Fraction:
    """Extra optimum cost the epsilon_prime overlap of the anyfit family may add."""
    if spec.family == Family.AnyFitLB:
        return spec.d * spec.k * spec.epsilon_prime
    return ZERO


@dataclass
class AdversarialReport:
    spec: AdversarialSpec
    policy: PolicyKind
    items: int
    bins: int
    cost: Fraction
    opt_upper: Fraction
    achieved_ratio: Fraction
    certified_ratio: Fraction
    predicted_ratio: Fraction
    limit_ratio: Fraction
    opt_exact: Optional[Fraction] = None

    def render(self) -> str:
        lines = [
            f"family={self.spec.family}",
            f"items={self.items}",
            f"policy={self.policy}",
            f"cost={render_scalar(self.cost)}",
            f"bins={self.bins}",
            f"opt_upper={render_scalar(self.opt_upper)}",
        ]
        if self.opt_exact is not None:
            lines.append(f"opt_exact={render_scalar(self.opt_exact)}")
        lines += [
            f"achieved_ratio={render_scalar(self.achieved_ratio)}",
            f"certified_ratio={render_scalar(self.certified_ratio)}",
            f"predicted_ratio={render_scalar(self.predicted_ratio)}",
            f"limit_ratio={render_scalar(self.limit_ratio)}",
        ]
        return "\n".join(lines)


def run_adversarial(
        spec: AdversarialSpec,
        policy: Optional[PolicyKind] = None,
        seed: int = settings.DEFAULT_SEED,
        exact: bool = False,
        limit: int = settings.DEFAULT_ORACLE_LIMIT
) -> AdversarialReport:
    policy = PolicyKind(policy) if policy is not None else DEFAULT_POLICY[spec.family]
    instance = generate(spec)
    trace = simulate(instance, policy, seed)
    cost = cost_of(trace)
    upper = opt_upper(spec)
    report = AdversarialReport(
        spec=spec,
        policy=policy,
        items=len(instance),
        bins=trace.bin_count,
        cost=cost,
        opt_upper=upper,
        achieved_ratio=cost / upper,
        certified_ratio=cost / (upper + timing_slack(spec)),
        predicted_ratio=predicted_ratio(spec),
        limit_ratio=limit_ratio(spec)
    )
    if exact:
        report.opt_exact, _ = opt_exact(instance, limit)
    logging.info(f"{spec.family} instance with {report.items} items cost {cost} under {policy}")
    return report
