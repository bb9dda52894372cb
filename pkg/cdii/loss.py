"""
Empirical risk of a (conductivity, voltage) pair on a mini-batch:

    misfit       mean (Y - gamma |grad u|)^2            interior points
    regularizer  mean gamma^2, or mean Huber(|grad gamma|)
    pde_residual mean (grad gamma . grad u + gamma lap u)^2
    boundary     mean (u - f)^2                          boundary points

total = misfit + alpha * regularizer + lambda_pde * pde_residual
        + lambda_bc * boundary

The networks enter through any object with ``jet(x, y)`` and
``value(x, y)`` recording onto the same tape (``network.mlp.BoundNet``,
or a test harness). Every sample is one lane entry, so a component is a
lane node summed once at the end.
"""
from typing import Sequence

from . autodiff import tape as ad
from . autodiff.tape import Tape
from . model.base import RegularizerKind
from . model.data import Samples
from . model.training import LossBreakdown, RegularizerSpec
from . network.mlp import SpatialJet

EPS_MAG = 1e-12

def _mean(tape: Tape, lane: int, count: int) -> int:
    return ad.record_scale(tape, ad.record_sum(tape, lane), 1.0 / count)

def grad_magnitude(tape: Tape, jet: SpatialJet, eps_mag: float = EPS_MAG) -> int:
    s = ad.add(tape, ad.square(tape, jet.grad[0]), ad.square(tape, jet.grad[1]))
    if eps_mag:
        s = ad.record_shift(tape, s, eps_mag)
    return ad.sqrt(tape, s)

def misfit_lane(tape: Tape, batch: Samples, gamma: SpatialJet, u: SpatialJet, eps_mag: float = EPS_MAG) -> int:
    predicted = ad.mul(tape, gamma.val, grad_magnitude(tape, u, eps_mag))
    return ad.square(tape, ad.sub(tape, ad.constant(tape, batch.values), predicted))

def residual(tape: Tape, gamma: SpatialJet, u: SpatialJet) -> int:
    """div(gamma grad u) by the product rule."""
    flux = ad.add(tape, ad.mul(tape, gamma.grad[0], u.grad[0]), ad.mul(tape, gamma.grad[1], u.grad[1]))
    laplacian = ad.add(tape, u.hess[0][0], u.hess[1][1])
    return ad.add(tape, flux, ad.mul(tape, gamma.val, laplacian))

def pde_lane(tape: Tape, gamma: SpatialJet, u: SpatialJet) -> int:
    return ad.square(tape, residual(tape, gamma, u))

def boundary_lane(tape: Tape, batch: Samples, u_value: int) -> int:
    return ad.square(tape, ad.sub(tape, u_value, ad.constant(tape, batch.values)))

def huber_lane(tape: Tape, gamma: SpatialJet, zeta: float) -> int:
    """
    h(t) = t for t >= zeta, t^2/(2 zeta) + zeta/2 below, t = |grad gamma|.
    The branch is chosen per sample from the recorded values; the square
    root is only taken where t >= zeta, elsewhere its argument is padded
    and its contribution masked out.
    """
    s = ad.add(tape, ad.square(tape, gamma.grad[0]), ad.square(tape, gamma.grad[1]))
    upper = (tape.value(s) >= zeta * zeta) * 1.0
    lower = 1.0 - upper
    linear = ad.sqrt(tape, ad.record_shift(tape, s, lower * zeta * zeta))
    quadratic = ad.record_shift(tape, ad.record_scale(tape, s, 1.0 / (2.0 * zeta)), zeta / 2.0)
    return ad.add(tape, ad.record_scale(tape, linear, upper), ad.record_scale(tape, quadratic, lower))

def regularizer_lane(tape: Tape, gamma: SpatialJet, spec: RegularizerSpec) -> int:
    if spec.kind is RegularizerKind.L2:
        return ad.square(tape, gamma.val)
    if spec.kind is RegularizerKind.TV_HUBER:
        return huber_lane(tape, gamma, spec.zeta)
    return ad.record_scale(tape, gamma.val, 0.0)

def data_misfit(batch: Samples, gamma_net, u_net, tape: Tape, eps_mag: float = EPS_MAG) -> int:
    lane = misfit_lane(tape, batch, gamma_net.jet(batch.x, batch.y), u_net.jet(batch.x, batch.y), eps_mag)
    return _mean(tape, lane, len(batch))

def pde_residual(batch: Samples, gamma_net, u_net, tape: Tape) -> int:
    lane = pde_lane(tape, gamma_net.jet(batch.x, batch.y), u_net.jet(batch.x, batch.y))
    return _mean(tape, lane, len(batch))

def boundary_misfit(batch: Samples, u_net, tape: Tape) -> int:
    return _mean(tape, boundary_lane(tape, batch, u_net.value(batch.x, batch.y)), len(batch))

def regularizer(batch: Samples, gamma_net, spec: RegularizerSpec, tape: Tape) -> int:
    return _mean(tape, regularizer_lane(tape, gamma_net.jet(batch.x, batch.y), spec), len(batch))

def component_sums(interior: Samples, boundary: Samples, gamma_net, u_net, spec: RegularizerSpec,
                   tape: Tape, eps_mag: float = EPS_MAG) -> Sequence[int]:
    """Per-component sums (not means) over one shard: misfit, reg, pde, bc."""
    gamma = gamma_net.jet(interior.x, interior.y)
    u = u_net.jet(interior.x, interior.y)
    return (ad.record_sum(tape, misfit_lane(tape, interior, gamma, u, eps_mag)),
            ad.record_sum(tape, regularizer_lane(tape, gamma, spec)),
            ad.record_sum(tape, pde_lane(tape, gamma, u)),
            ad.record_sum(tape, boundary_lane(tape, boundary, u_net.value(boundary.x, boundary.y))))

def weighted_total(tape: Tape, sums: Sequence[int], n_interior: int, n_boundary: int, spec: RegularizerSpec,
                   lambda_pde: float = 1.0, lambda_bc: float = 1.0) -> int:
    misfit, reg, pde, bc = sums
    return ad.total(tape, [
        ad.record_scale(tape, misfit, 1.0 / n_interior),
        ad.record_scale(tape, reg, spec.alpha / n_interior),
        ad.record_scale(tape, pde, lambda_pde / n_interior),
        ad.record_scale(tape, bc, lambda_bc / n_boundary),
    ])

def total_loss(interior: Samples, boundary: Samples, gamma_net, u_net, spec: RegularizerSpec, tape: Tape,
               eps_mag: float = EPS_MAG, lambda_pde: float = 1.0, lambda_bc: float = 1.0) -> LossBreakdown:
    if not len(interior) or not len(boundary):
        raise ValueError('both batches must be nonempty')
    sums = component_sums(interior, boundary, gamma_net, u_net, spec, tape, eps_mag)
    root = weighted_total(tape, sums, len(interior), len(boundary), spec, lambda_pde, lambda_bc)
    misfit, reg, pde, bc = (tape.value(s) for s in sums)
    return LossBreakdown(misfit / len(interior), reg / len(interior), pde / len(interior),
                         bc / len(boundary), tape.value(root), root)
