#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lumaswitch/colorspace.hpp"
#include "lumaswitch/skinfilter.hpp"

namespace lumaswitch {

inline constexpr std::size_t kMlpInputs = FeatureVector::kSize;
inline constexpr std::size_t kMlpOutputs = 3;

using Probabilities = std::array<double, kMlpOutputs>;
using InputVector = std::array<double, kMlpInputs>;

/// Per-feature affine map x' = (x - shift) / scale applied before the
/// network. Stored with the model so inference is self-contained.
struct Normalization {
    InputVector shift{};
    InputVector scale{1, 1, 1, 1, 1, 1, 1, 1, 1};

    /// z-score fit: shift = mean, scale = population standard deviation
    /// (1 where a feature is constant). Throws std::invalid_argument on empty input.
    static Normalization fit(std::span<const FeatureVector> features);

    InputVector apply(const FeatureVector& x) const noexcept;
    /// Throws std::invalid_argument if any scale is not a positive finite number.
    void validate() const;

    friend bool operator==(const Normalization&, const Normalization&) = default;
};

/// Two-layer network: tanh hidden layer, linear output layer, softmax.
/// Parameters live in one flat buffer laid out as [w1 | b1 | w2 | b2], with
/// w1 hidden x 9 and w2 3 x hidden, both row-major.
class MlpModel {
public:
    static constexpr std::size_t kDefaultHidden = 15;

    explicit MlpModel(std::size_t hidden_count = kDefaultHidden);

    /// Weights drawn uniformly from [-0.5, 0.5] with a fixed-seed generator.
    static MlpModel random(std::size_t hidden_count, std::uint64_t seed);

    std::size_t hidden_count() const noexcept { return hidden_; }
    static std::size_t parameter_count(std::size_t hidden) noexcept {
        return hidden * kMlpInputs + hidden + kMlpOutputs * hidden + kMlpOutputs;
    }

    double w1(std::size_t j, std::size_t i) const noexcept { return params_[j * kMlpInputs + i]; }
    double b1(std::size_t j) const noexcept { return params_[b1_offset() + j]; }
    double w2(std::size_t k, std::size_t j) const noexcept { return params_[w2_offset() + k * hidden_ + j]; }
    double b2(std::size_t k) const noexcept { return params_[b2_offset() + k]; }

    double& w1(std::size_t j, std::size_t i) noexcept { return params_[j * kMlpInputs + i]; }
    double& b1(std::size_t j) noexcept { return params_[b1_offset() + j]; }
    double& w2(std::size_t k, std::size_t j) noexcept { return params_[w2_offset() + k * hidden_ + j]; }
    double& b2(std::size_t k) noexcept { return params_[b2_offset() + k]; }

    std::span<const double> parameters() const noexcept { return params_; }
    std::span<double> parameters() noexcept { return params_; }

    /// Throws std::invalid_argument if any parameter is not finite.
    void validate() const;

    friend bool operator==(const MlpModel&, const MlpModel&) = default;

private:
    std::size_t b1_offset() const noexcept { return hidden_ * kMlpInputs; }
    std::size_t w2_offset() const noexcept { return b1_offset() + hidden_; }
    std::size_t b2_offset() const noexcept { return w2_offset() + kMlpOutputs * hidden_; }

    std::size_t hidden_;
    std::vector<double> params_;
};

/// Max-subtracted softmax.
Probabilities softmax(const Probabilities& logits) noexcept;

Probabilities forward(const MlpModel& model, const FeatureVector& x, const Normalization& norm);

/// Argmax of `forward`, ties going to the lowest class index.
ColorSpaceId predict_space(const MlpModel& model, const FeatureVector& x,
                           const Normalization& norm);

struct TrainingExample {
    FeatureVector features;
    ColorSpaceId target = ColorSpaceId::RGB;
};

struct LossAndGradient {
    double loss = 0.0;
    std::vector<double> gradient;  ///< same layout as MlpModel::parameters()
};

/// Mean cross-entropy over `data` and its exact gradient (backpropagation).
LossAndGradient loss_and_gradient(const MlpModel& model, std::span<const TrainingExample> data,
                                  const Normalization& norm);
double mean_loss(const MlpModel& model, std::span<const TrainingExample> data,
                 const Normalization& norm);

struct TrainConfig {
    double learning_rate = 0.01;
    int epochs = 500;
    std::uint64_t seed = 0;
    std::size_t hidden_count = MlpModel::kDefaultHidden;
    Normalization normalization;

    /// Throws std::invalid_argument on a non-positive rate, epochs < 1,
    /// hidden_count 0, or a bad normalization.
    void validate() const;
};

struct TrainResult {
    MlpModel model;
    /// Mean loss before each update, followed by the loss of the returned
    /// model: epochs + 1 entries.
    std::vector<double> loss_trace;
};

class TrainingError : public std::runtime_error {
public:
    TrainingError(const std::string& what, int epoch) : std::runtime_error(what), epoch_(epoch) {}
    /// Epoch at which training failed, or -1 for input errors.
    int epoch() const noexcept { return epoch_; }

private:
    int epoch_;
};

/// Full-batch gradient descent on mean cross-entropy.
TrainResult train(std::span<const TrainingExample> data, const TrainConfig& cfg);

double training_accuracy(const MlpModel& model, std::span<const TrainingExample> data,
                         const Normalization& norm);

// ---------------------------------------------------------------------------
// Persistence

struct StoredModel {
    MlpModel model;
    Normalization normalization;
};

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kModelFormatVersion = 1;

/// {hidden_count, w1, b1, w2, b2, normalization, format_version}; w1 and w2
/// are arrays of rows. Numbers use the shortest text that reads back to the
/// same double.
nlohmann::ordered_json model_to_json(const MlpModel& model, const Normalization& norm);
/// Throws ModelFormatError on malformed documents or inconsistent sizes.
StoredModel model_from_json(const nlohmann::ordered_json& doc);

void save_model(const MlpModel& model, const Normalization& norm,
                const std::filesystem::path& path);
StoredModel load_model(const std::filesystem::path& path);

/// "epoch,loss" CSV.
void write_loss_trace(std::span<const double> losses, const std::filesystem::path& path);

}  // namespace lumaswitch
