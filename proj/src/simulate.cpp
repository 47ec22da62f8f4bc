#include "frugal/simulate.hpp"

#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace frugal {

namespace {

double sample_median(Eigen::VectorXd column) {
    std::sort(column.data(), column.data() + column.size());
    const Eigen::Index n = column.size();
    if (n % 2 == 1) return column(n / 2);
    return 0.5 * (column(n / 2 - 1) + column(n / 2));
}

// Latent draws for one sample: a common factor column f plus one noise column
// per cue.  Draw order is row-major (f first, then the cue noises) so the
// stream layout is independent of lambda and the calibration bisection can
// reuse a single sample across loadings.
struct LatentSample {
    Eigen::VectorXd factor;
    Eigen::MatrixXd eps;

    LatentSample(Eigen::Index n, Eigen::Index k, Rng& rng) : factor(n), eps(n, k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            factor(i) = rng.next_normal();
            for (Eigen::Index j = 0; j < k; ++j) eps(i, j) = rng.next_normal();
        }
    }

    Eigen::MatrixXd latents(double lambda) const {
        const double residual = std::sqrt(1.0 - lambda * lambda);
        return lambda * factor.replicate(1, eps.cols()) + residual * eps;
    }
};

Eigen::MatrixXd median_split(const Eigen::MatrixXd& latents) {
    Eigen::MatrixXd cues(latents.rows(), latents.cols());
    for (Eigen::Index j = 0; j < latents.cols(); ++j) {
        const double m = sample_median(latents.col(j));
        for (Eigen::Index i = 0; i < latents.rows(); ++i)
            cues(i, j) = latents(i, j) > m ? 1.0 : 0.0;
    }
    return cues;
}

double mean_pairwise_correlation(const Eigen::MatrixXd& columns) {
    const Eigen::Index k = columns.cols();
    const auto n = static_cast<double>(columns.rows());
    Eigen::MatrixXd centered = columns.rowwise() - columns.colwise().mean();
    Eigen::VectorXd sd = (centered.colwise().squaredNorm() / n).cwiseSqrt();
    double total = 0.0;
    int pairs = 0;
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = a + 1; b < k; ++b) {
            ++pairs;
            if (sd(a) == 0.0 || sd(b) == 0.0) continue;
            total += centered.col(a).dot(centered.col(b)) / (n * sd(a) * sd(b));
        }
    }
    return pairs ? total / pairs : 0.0;
}

// Finds the factor loading whose median-split cues reach the target mean
// pairwise correlation on the calibration sample.  The achieved correlation
// is monotone in lambda, so plain bisection suffices.
double calibrate_loading(double target, const LatentSample& sample) {
    if (target <= 0.0) return 0.0;
    double lo = 0.0, hi = 0.9999;
    double achieved_hi = mean_pairwise_correlation(median_split(sample.latents(hi)));
    if (achieved_hi + 0.08 < target)
        throw CalibrationError("redundancy target " + std::to_string(target) +
                               " unreachable; maximum achievable on this sample is " +
                               std::to_string(achieved_hi));
    double lambda = hi, achieved = achieved_hi;
    for (int iter = 0; iter < 60; ++iter) {
        lambda = 0.5 * (lo + hi);
        achieved = mean_pairwise_correlation(median_split(sample.latents(lambda)));
        if (std::abs(achieved - target) < 0.005) break;
        if (achieved < target)
            lo = lambda;
        else
            hi = lambda;
    }
    if (std::abs(achieved - target) > 0.08)
        throw CalibrationError("redundancy calibration stalled at " + std::to_string(achieved) +
                               " for target " + std::to_string(target));
    return lambda;
}

} // namespace

void SimSpec::validate() const {
    if (n_objects < 4) throw PreconditionError("n_objects must be >= 4");
    if (n_cues < 1) throw PreconditionError("n_cues must be >= 1");
    if (!(redundancy >= 0.0 && redundancy <= 0.95))
        throw PreconditionError("redundancy must lie in [0, 0.95]");
    if (!(noise >= 0.0 && noise <= 0.5)) throw PreconditionError("noise must lie in [0, 0.5]");
}

Eigen::VectorXd profile_weights(WeightProfile profile, int n_cues) {
    Eigen::VectorXd w(n_cues);
    if (profile == WeightProfile::Uniform) {
        w.setConstant(1.0 / n_cues);
    } else {
        for (int k = 0; k < n_cues; ++k) w(k) = std::pow(2.0, -(k + 1));
        w /= w.sum();
    }
    return w;
}

Environment simulate_environment(const SimSpec& spec) {
    spec.validate();
    const Eigen::Index n = spec.n_objects;
    const Eigen::Index k = spec.n_cues;

    // Sub-streams: 0 calibrates the loading, 1 draws the environment latents,
    // 2 drives the label-flip noise.  Keeping them separate makes the emitted
    // environment independent of how many draws calibration consumed.
    double lambda = 0.0;
    if (k >= 2 && spec.redundancy > 0.0) {
        Rng calib_rng(mix_seed(spec.seed, 0));
        const Eigen::Index m = std::max<Eigen::Index>(n, 1000);
        LatentSample calib(m, k, calib_rng);
        lambda = calibrate_loading(spec.redundancy, calib);
    }

    Rng rng(mix_seed(spec.seed, 1));
    LatentSample sample(n, k, rng);
    Eigen::MatrixXd latents = sample.latents(lambda);

    Environment env;
    env.values = median_split(latents);
    for (Eigen::Index j = 0; j < k; ++j) {
        CueDefinition cue;
        cue.name = "cue" + std::to_string(j + 1);
        cue.kind = CueKind::Binary;
        cue.direction = +1;
        env.cues.push_back(cue);
    }
    for (Eigen::Index i = 0; i < n; ++i) env.objects.push_back("o" + std::to_string(i + 1));

    // The criterion is the median split of the weighted latent score.  Using
    // the latent scores rather than the binarized cues keeps every cue
    // informative in proportion to its weight; a weighted sum of the
    // median-split cues would be decided entirely by the dominant cue under
    // the halving profile.
    Eigen::VectorXd w = profile_weights(spec.weight_profile, spec.n_cues);
    Eigen::VectorXd score = latents * w;
    const double cutoff = sample_median(score);
    env.criterion.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) env.criterion(i) = score(i) > cutoff ? 1 : 0;

    if (spec.noise > 0.0) {
        Rng noise_rng(mix_seed(spec.seed, 2));
        for (Eigen::Index i = 0; i < n; ++i)
            if (noise_rng.next_double() < spec.noise) env.criterion(i) = 1 - env.criterion(i);
    }

    env.validate();
    return env;
}

double mean_pairwise_cue_correlation(const Environment& env) {
    if (env.n_cues() < 2) throw PreconditionError("correlation needs at least 2 cues");
    return mean_pairwise_correlation(env.values);
}

} // namespace frugal
