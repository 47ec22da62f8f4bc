#pragma once

#include "frugal/environment.hpp"

#include <cstdint>

namespace frugal {

enum class WeightProfile { Noncompensatory, Uniform };

// Recipe for a synthetic environment.  Redundancy is the target mean pairwise
// correlation of the generated binary cues; noise is the probability that a
// criterion label is flipped after construction.
struct SimSpec {
    int n_objects = 100;
    int n_cues = 4;
    WeightProfile weight_profile = WeightProfile::Noncompensatory;
    double redundancy = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 0;

    // Throws PreconditionError when any field is out of range.
    void validate() const;
};

// Cue importance weights for a profile: halving (2^-k, normalized to sum 1)
// for Noncompensatory, equal for Uniform.
Eigen::VectorXd profile_weights(WeightProfile profile, int n_cues);

// Generates a binary-cue environment with controlled redundancy and noise.
//
// Mechanism: each object draws a latent score z_k per cue from a Gaussian
// one-factor copula (z_k = lambda*f + sqrt(1-lambda^2)*eps_k); cues are the
// sample-median split of their latent column; the criterion is the
// sample-median split of the weighted latent sum (weights from the profile),
// with each label then flipped independently with probability spec.noise.
// The factor loading lambda is calibrated by bisection on a dedicated
// calibration sample of at least 1000 objects so that the mean pairwise cue
// correlation lands within +-0.1 of spec.redundancy; a CalibrationError is
// thrown when the bound cannot be met.  Deterministic per spec.seed.
Environment simulate_environment(const SimSpec& spec);

// Mean pairwise Pearson correlation across all unordered cue column pairs.
// Pairs where either column is constant contribute 0.  Requires >= 2 cues.
double mean_pairwise_cue_correlation(const Environment& env);

} // namespace frugal
