#include "lindgain/error.hpp"
#include "lindgain/master.hpp"

namespace lindgain::master {

greens::InteractionTensorPair thermal_tensors(const greens::InteractionTensorPair& pair,
                                              const ThermalOccupation& occ)
{
    const double n = occ.n;
    return {(1.0 + n) * pair.loss_tensor + n * pair.gain_tensor,
            (1.0 + n) * pair.gain_tensor + n * pair.loss_tensor};
}

RateMatrices thermal_rates(const RateMatrices& rates, const ThermalOccupation& occ)
{
    const double n = occ.n;
    return {(1.0 + n) * rates.loss + n * rates.gain, (1.0 + n) * rates.gain + n * rates.loss};
}

RatePair thermal_rates(const RatePair& rates, const ThermalOccupation& occ)
{
    const double n = occ.n;
    return RatePair{(1.0 + n) * rates.gamma_loss + n * rates.gamma_gain,
                    (1.0 + n) * rates.gamma_gain + n * rates.gamma_loss};
}

RatePair rates_two_level(const QubitSpec& q, const greens::InteractionTensorPair& pair_th)
{
    if (q.model() != QubitModel::TwoLevel) {
        throw ValidationError("rates_two_level: qubit must be two-level");
    }
    const Vector3c& d = q.dipole();
    // Quadratic forms over PSD tensors; clamp the rounding-level negative part.
    const double loss = 2.0 * pair_th.loss_tensor.sandwich(d, d).real();
    const double gain = 2.0 * pair_th.gain_tensor.sandwich(d, d).real();
    return RatePair{std::max(loss, 0.0), std::max(gain, 0.0)};
}

RateMatrices rate_matrices_v(const QubitSpec& q, const greens::InteractionTensorPair& pair_th)
{
    if (q.model() != QubitModel::VShaped) {
        throw ValidationError("rate_matrices_v: qubit must be V-shaped");
    }
    RateMatrices out{Matrix2c::Zero(), Matrix2c::Zero()};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Vector3c gi = q.transition_dipole(i + 1);
            const Vector3c gj = q.transition_dipole(j + 1);
            out.loss(i, j) = 2.0 * pair_th.loss_tensor.sandwich(gi, gj);
            out.gain(i, j) = 2.0 * pair_th.gain_tensor.sandwich(gi, gj);
        }
    }
    // Diagonals are real quadratic forms.
    for (int i = 0; i < 2; ++i) {
        out.loss(i, i) = out.loss(i, i).real();
        out.gain(i, i) = out.gain(i, i).real();
    }
    out.loss(1, 0) = std::conj(out.loss(0, 1));
    out.gain(1, 0) = std::conj(out.gain(0, 1));
    return out;
}

} // namespace lindgain::master
