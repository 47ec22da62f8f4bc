#include "frugal/baselines.hpp"

#include "frugal/csv.hpp"
#include "frugal/errors.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace frugal {

namespace {

constexpr double kRidge = 1e-8;       // fallback regularization on rank deficiency
constexpr double kWeightBound = 30.0; // |weight| beyond this marks separation

Eigen::MatrixXd design_matrix(const Environment& env) {
    Eigen::MatrixXd X(env.n_objects(), env.n_cues() + 1);
    X.col(0).setOnes();
    X.rightCols(env.n_cues()) = env.values;
    return X;
}

double sigmoid(double eta) {
    if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

} // namespace

LinearModel fit_linear(const Environment& train) {
    train.validate();
    const Eigen::MatrixXd X = design_matrix(train);
    const Eigen::VectorXd y = train.criterion.cast<double>();
    const Eigen::MatrixXd gram = X.transpose() * X;
    const Eigen::VectorXd moment = X.transpose() * y;

    LinearModel model;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    Eigen::VectorXd solution;
    if (lu.rank() < gram.rows()) {
        model.rank_deficient = true;
        Eigen::MatrixXd ridged = gram;
        ridged.diagonal().array() += kRidge;
        solution = ridged.ldlt().solve(moment);
    } else {
        solution = lu.solve(moment);
    }
    model.intercept = solution(0);
    model.weights = solution.tail(train.n_cues());
    return model;
}

LogisticModel fit_logistic(const Environment& train, int max_iter, double tol) {
    train.validate();
    if (max_iter < 1) throw PreconditionError("max_iter must be >= 1");
    const int n_pos = train.criterion.sum();
    if (n_pos == 0 || n_pos == static_cast<int>(train.n_objects()))
        throw PreconditionError("logistic regression needs both classes in the training data");

    const Eigen::MatrixXd X = design_matrix(train);
    const Eigen::VectorXd y = train.criterion.cast<double>();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(X.cols());

    LogisticModel model;
    for (int iter = 0; iter < max_iter; ++iter) {
        model.iterations = iter + 1;
        const Eigen::VectorXd eta = X * w;
        Eigen::VectorXd p(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) p(i) = sigmoid(eta(i));
        const Eigen::VectorXd weight = (p.array() * (1.0 - p.array())).cwiseMax(1e-10);
        const Eigen::VectorXd gradient = X.transpose() * (y - p);
        Eigen::MatrixXd hessian = X.transpose() * weight.asDiagonal() * X;
        // Tiny diagonal lift keeps the Newton step solvable when the working
        // weights collapse near separation; it perturbs the step, not the
        // objective.
        hessian.diagonal().array() += 1e-10;
        const Eigen::VectorXd delta = hessian.ldlt().solve(gradient);
        if (!delta.allFinite()) break;
        w += delta;
        if (delta.cwiseAbs().maxCoeff() < tol) {
            model.converged = true;
            break;
        }
    }

    model.separation = w.cwiseAbs().maxCoeff() > kWeightBound;
    if (model.separation)
        w = w.cwiseMax(-kWeightBound).cwiseMin(kWeightBound);
    model.intercept = w(0);
    model.weights = w.tail(train.n_cues());
    return model;
}

double predict_score(const LinearModel& model, const Eigen::VectorXd& cue_values) {
    if (cue_values.size() != model.weights.size())
        throw PreconditionError("expected " + std::to_string(model.weights.size()) +
                                " cue values, got " + std::to_string(cue_values.size()));
    return model.weights.dot(cue_values) + model.intercept;
}

double predict_score(const LogisticModel& model, const Eigen::VectorXd& cue_values) {
    if (cue_values.size() != model.weights.size())
        throw PreconditionError("expected " + std::to_string(model.weights.size()) +
                                " cue values, got " + std::to_string(cue_values.size()));
    return sigmoid(model.weights.dot(cue_values) + model.intercept);
}

double log_likelihood(const LogisticModel& model, const Environment& env) {
    if (env.n_cues() != model.weights.size())
        throw PreconditionError("model and environment disagree on cue count");
    double total = 0.0;
    for (Eigen::Index i = 0; i < env.n_objects(); ++i) {
        const double eta = model.weights.dot(env.values.row(i).transpose()) + model.intercept;
        total -= env.criterion(i) == 1 ? softplus(-eta) : softplus(eta);
    }
    return total;
}

namespace {

const std::set<std::string> kReservedKeys{"intercept", "rank_deficient", "converged", "separation",
                                          "iterations"};

void check_names(const std::vector<CueDefinition>& cues) {
    for (const auto& cue : cues)
        if (kReservedKeys.count(cue.name))
            throw SchemaError("cue name '" + cue.name + "' collides with a reserved model key");
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t sep = line.find(" = ");
        if (sep == std::string::npos)
            throw ParseError("malformed key-value line " + std::to_string(line_no) + ": '" + line + "'");
        kv[line.substr(0, sep)] = line.substr(sep + 3);
    }
    return kv;
}

double require_value(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw SchemaError("model text is missing key '" + key + "'");
    return csv::parse_double(it->second, 0, key);
}

} // namespace

std::string linear_to_text(const LinearModel& model, const std::vector<CueDefinition>& cues) {
    check_names(cues);
    if (model.weights.size() != static_cast<Eigen::Index>(cues.size()))
        throw PreconditionError("model and cue list disagree on cue count");
    std::ostringstream out;
    for (std::size_t j = 0; j < cues.size(); ++j)
        out << cues[j].name << " = " << csv::format_exact(model.weights(static_cast<Eigen::Index>(j))) << '\n';
    out << "intercept = " << csv::format_exact(model.intercept) << '\n';
    out << "rank_deficient = " << (model.rank_deficient ? 1 : 0) << '\n';
    return out.str();
}

LinearModel linear_from_text(const std::string& text, const std::vector<CueDefinition>& cues) {
    check_names(cues);
    const auto kv = parse_key_values(text);
    LinearModel model;
    model.weights.resize(static_cast<Eigen::Index>(cues.size()));
    for (std::size_t j = 0; j < cues.size(); ++j)
        model.weights(static_cast<Eigen::Index>(j)) = require_value(kv, cues[j].name);
    model.intercept = require_value(kv, "intercept");
    model.rank_deficient = require_value(kv, "rank_deficient") != 0.0;
    return model;
}

std::string logistic_to_text(const LogisticModel& model, const std::vector<CueDefinition>& cues) {
    check_names(cues);
    if (model.weights.size() != static_cast<Eigen::Index>(cues.size()))
        throw PreconditionError("model and cue list disagree on cue count");
    std::ostringstream out;
    for (std::size_t j = 0; j < cues.size(); ++j)
        out << cues[j].name << " = " << csv::format_exact(model.weights(static_cast<Eigen::Index>(j))) << '\n';
    out << "intercept = " << csv::format_exact(model.intercept) << '\n';
    out << "converged = " << (model.converged ? 1 : 0) << '\n';
    out << "separation = " << (model.separation ? 1 : 0) << '\n';
    out << "iterations = " << model.iterations << '\n';
    return out.str();
}

LogisticModel logistic_from_text(const std::string& text, const std::vector<CueDefinition>& cues) {
    check_names(cues);
    const auto kv = parse_key_values(text);
    LogisticModel model;
    model.weights.resize(static_cast<Eigen::Index>(cues.size()));
    for (std::size_t j = 0; j < cues.size(); ++j)
        model.weights(static_cast<Eigen::Index>(j)) = require_value(kv, cues[j].name);
    model.intercept = require_value(kv, "intercept");
    model.converged = require_value(kv, "converged") != 0.0;
    model.separation = require_value(kv, "separation") != 0.0;
    model.iterations = static_cast<int>(require_value(kv, "iterations"));
    return model;
}

} // namespace frugal
