#include "lumaswitch/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lumaswitch {

Normalization Normalization::fit(std::span<const FeatureVector> features) {
    if (features.empty()) throw std::invalid_argument("Normalization::fit: no features");
    const double n = static_cast<double>(features.size());
    Normalization out;
    for (std::size_t i = 0; i < kMlpInputs; ++i) {
        double mean = 0.0;
        for (const auto& f : features) mean += f.as_array()[i];
        mean /= n;
        double var = 0.0;
        for (const auto& f : features) {
            const double d = f.as_array()[i] - mean;
            var += d * d;
        }
        const double sd = std::sqrt(var / n);
        out.shift[i] = mean;
        out.scale[i] = sd > 1e-12 ? sd : 1.0;
    }
    return out;
}

InputVector Normalization::apply(const FeatureVector& x) const noexcept {
    const auto raw = x.as_array();
    InputVector out{};
    for (std::size_t i = 0; i < kMlpInputs; ++i) out[i] = (raw[i] - shift[i]) / scale[i];
    return out;
}

void Normalization::validate() const {
    for (std::size_t i = 0; i < kMlpInputs; ++i) {
        if (!std::isfinite(shift[i]) || !std::isfinite(scale[i]) || scale[i] <= 0.0) {
            throw std::invalid_argument("normalization: feature " + std::to_string(i) +
                                        " needs a finite shift and a positive scale");
        }
    }
}

MlpModel::MlpModel(std::size_t hidden_count)
    : hidden_(hidden_count), params_(parameter_count(hidden_count), 0.0) {
    if (hidden_count == 0) throw std::invalid_argument("MlpModel: hidden_count must be positive");
}

MlpModel MlpModel::random(std::size_t hidden_count, std::uint64_t seed) {
    MlpModel m(hidden_count);
    std::mt19937_64 rng(seed);
    for (double& p : m.params_) {
        // 53 random mantissa bits -> [0,1), independent of the standard
        // library's distribution implementation.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        p = u - 0.5;
    }
    return m;
}

void MlpModel::validate() const {
    for (double p : params_) {
        if (!std::isfinite(p)) throw std::invalid_argument("MlpModel: non-finite parameter");
    }
}

Probabilities softmax(const Probabilities& q) noexcept {
    const double hi = std::max({q[0], q[1], q[2]});
    Probabilities p{};
    double total = 0.0;
    for (std::size_t k = 0; k < kMlpOutputs; ++k) {
        p[k] = std::exp(q[k] - hi);
        total += p[k];
    }
    for (double& v : p) v /= total;
    return p;
}

namespace {

struct Activations {
    InputVector input;
    std::vector<double> hidden;
    Probabilities logits;
};

Activations run_layers(const MlpModel& m, const InputVector& x) {
    Activations a{x, std::vector<double>(m.hidden_count()), {}};
    for (std::size_t j = 0; j < m.hidden_count(); ++j) {
        double s = m.b1(j);
        for (std::size_t i = 0; i < kMlpInputs; ++i) s += m.w1(j, i) * x[i];
        a.hidden[j] = std::tanh(s);
    }
    for (std::size_t k = 0; k < kMlpOutputs; ++k) {
        double s = m.b2(k);
        for (std::size_t j = 0; j < m.hidden_count(); ++j) s += m.w2(k, j) * a.hidden[j];
        a.logits[k] = s;
    }
    return a;
}

// -log softmax(q)[target], evaluated without forming the probabilities.
double cross_entropy(const Probabilities& q, std::size_t target) {
    const double hi = std::max({q[0], q[1], q[2]});
    double total = 0.0;
    for (double v : q) total += std::exp(v - hi);
    return -(q[target] - hi - std::log(total));
}

}  // namespace

Probabilities forward(const MlpModel& model, const FeatureVector& x, const Normalization& norm) {
    return softmax(run_layers(model, norm.apply(x)).logits);
}

ColorSpaceId predict_space(const MlpModel& model, const FeatureVector& x,
                           const Normalization& norm) {
    const Probabilities p = forward(model, x, norm);
    std::size_t best = 0;
    for (std::size_t k = 1; k < kMlpOutputs; ++k) {
        if (p[k] > p[best]) best = k;
    }
    return kAllSpaces[best];
}

LossAndGradient loss_and_gradient(const MlpModel& model, std::span<const TrainingExample> data,
                                  const Normalization& norm) {
    const std::size_t hidden = model.hidden_count();
    MlpModel grad(hidden);  // reuse the parameter layout for accumulation
    double loss = 0.0;
    std::vector<double> hidden_delta(hidden);

    for (const auto& ex : data) {
        const Activations a = run_layers(model, norm.apply(ex.features));
        const std::size_t target = index_of(ex.target);
        loss += cross_entropy(a.logits, target);

        Probabilities out_delta = softmax(a.logits);
        out_delta[target] -= 1.0;

        for (std::size_t k = 0; k < kMlpOutputs; ++k) {
            grad.b2(k) += out_delta[k];
            for (std::size_t j = 0; j < hidden; ++j) grad.w2(k, j) += out_delta[k] * a.hidden[j];
        }
        for (std::size_t j = 0; j < hidden; ++j) {
            double back = 0.0;
            for (std::size_t k = 0; k < kMlpOutputs; ++k) back += model.w2(k, j) * out_delta[k];
            hidden_delta[j] = back * (1.0 - a.hidden[j] * a.hidden[j]);
        }
        for (std::size_t j = 0; j < hidden; ++j) {
            grad.b1(j) += hidden_delta[j];
            for (std::size_t i = 0; i < kMlpInputs; ++i) grad.w1(j, i) += hidden_delta[j] * a.input[i];
        }
    }

    const double n = static_cast<double>(data.size());
    LossAndGradient out{loss / n, std::vector<double>(grad.parameters().begin(), grad.parameters().end())};
    for (double& g : out.gradient) g /= n;
    return out;
}

double mean_loss(const MlpModel& model, std::span<const TrainingExample> data,
                 const Normalization& norm) {
    double loss = 0.0;
    for (const auto& ex : data) {
        loss += cross_entropy(run_layers(model, norm.apply(ex.features)).logits, index_of(ex.target));
    }
    return loss / static_cast<double>(data.size());
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw std::invalid_argument("train: learning_rate must be positive");
    }
    if (epochs < 1) throw std::invalid_argument("train: epochs must be at least 1");
    if (hidden_count == 0) throw std::invalid_argument("train: hidden_count must be positive");
    normalization.validate();
}

TrainResult train(std::span<const TrainingExample> data, const TrainConfig& cfg) {
    if (data.empty()) throw TrainingError("train: training set is empty", -1);
    cfg.validate();

    TrainResult result{MlpModel::random(cfg.hidden_count, cfg.seed), {}};
    result.loss_trace.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
    auto params = result.model.parameters();

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const LossAndGradient lg = loss_and_gradient(result.model, data, cfg.normalization);
        if (!std::isfinite(lg.loss)) {
            throw TrainingError("train: loss became non-finite at epoch " + std::to_string(epoch),
                                epoch);
        }
        result.loss_trace.push_back(lg.loss);
        for (std::size_t p = 0; p < params.size(); ++p) params[p] -= cfg.learning_rate * lg.gradient[p];
    }

    const double final_loss = mean_loss(result.model, data, cfg.normalization);
    if (!std::isfinite(final_loss)) {
        throw TrainingError("train: loss became non-finite at epoch " + std::to_string(cfg.epochs),
                            cfg.epochs);
    }
    result.loss_trace.push_back(final_loss);
    return result;
}

double training_accuracy(const MlpModel& model, std::span<const TrainingExample> data,
                         const Normalization& norm) {
    if (data.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& ex : data) {
        if (predict_space(model, ex.features, norm) == ex.target) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace lumaswitch
