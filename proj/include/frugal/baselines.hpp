#pragma once

#include "frugal/environment.hpp"

#include <string>
#include <vector>

namespace frugal {

// Ordinary-least-squares scorer.  rank_deficient records that the normal
// equations needed the ridge fallback.
struct LinearModel {
    Eigen::VectorXd weights; // one per cue
    double intercept = 0.0;
    bool rank_deficient = false;
};

// Logistic scorer fitted by iteratively reweighted least squares.  separation
// records that some weight hit the clip bound (perfectly separable data).
struct LogisticModel {
    Eigen::VectorXd weights; // one per cue
    double intercept = 0.0;
    bool converged = false;
    bool separation = false;
    int iterations = 0;
};

// OLS on the 0/1 criterion via normal equations; falls back to a ridge
// (lambda = 1e-8) when the Gram matrix is rank deficient, setting the flag.
LinearModel fit_linear(const Environment& train);

// IRLS maximum likelihood.  Converged when the largest absolute weight update
// drops below tol; any |weight| above the clip bound (30) marks separation
// and is clipped.  Requires both classes.
LogisticModel fit_logistic(const Environment& train, int max_iter = 100, double tol = 1e-6);

// Linear score: dot product plus intercept.  Logistic score: sigmoid of the
// same (a probability).  Both throw PreconditionError on length mismatch.
double predict_score(const LinearModel& model, const Eigen::VectorXd& cue_values);
double predict_score(const LogisticModel& model, const Eigen::VectorXd& cue_values);

// Bernoulli log-likelihood of the data under the model (used by tests and
// diagnostics).
double log_likelihood(const LogisticModel& model, const Environment& env);

// Key-value text form, one `name = value` line per cue plus `intercept`;
// round-trips exactly.  The cue list fixes name order and length.
std::string linear_to_text(const LinearModel& model, const std::vector<CueDefinition>& cues);
LinearModel linear_from_text(const std::string& text, const std::vector<CueDefinition>& cues);
std::string logistic_to_text(const LogisticModel& model, const std::vector<CueDefinition>& cues);
LogisticModel logistic_from_text(const std::string& text, const std::vector<CueDefinition>& cues);

} // namespace frugal
