#include <fstream>
#include <sstream>

#include "lumaswitch/mlp.hpp"

namespace lumaswitch {

using nlohmann::ordered_json;

namespace {

ordered_json rows(std::size_t row_count, std::size_t col_count, auto&& at) {
    ordered_json out = ordered_json::array();
    for (std::size_t r = 0; r < row_count; ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < col_count; ++c) row.push_back(at(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

const ordered_json& member(const ordered_json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ModelFormatError(std::string("model: missing key '") + key + "'");
    return *it;
}

std::vector<double> numbers(const ordered_json& node, std::size_t expected, const std::string& what) {
    if (!node.is_array()) throw ModelFormatError("model: " + what + " must be an array");
    if (node.size() != expected) {
        throw ModelFormatError("model: " + what + " has " + std::to_string(node.size()) +
                               " entries, expected " + std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& v : node) {
        if (!v.is_number()) throw ModelFormatError("model: " + what + " holds a non-number");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> matrix(const ordered_json& node, std::size_t row_count, std::size_t col_count,
                           const std::string& what) {
    if (!node.is_array() || node.size() != row_count) {
        throw ModelFormatError("model: " + what + " must have " + std::to_string(row_count) +
                               " rows");
    }
    std::vector<double> out;
    out.reserve(row_count * col_count);
    for (std::size_t r = 0; r < row_count; ++r) {
        const auto row = numbers(node[r], col_count, what + " row " + std::to_string(r));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

InputVector to_input(const std::vector<double>& v) {
    InputVector out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

}  // namespace

ordered_json model_to_json(const MlpModel& m, const Normalization& norm) {
    const std::size_t h = m.hidden_count();
    ordered_json doc;
    doc["hidden_count"] = h;
    doc["w1"] = rows(h, kMlpInputs, [&](std::size_t j, std::size_t i) { return m.w1(j, i); });
    doc["b1"] = rows(1, h, [&](std::size_t, std::size_t j) { return m.b1(j); })[0];
    doc["w2"] = rows(kMlpOutputs, h, [&](std::size_t k, std::size_t j) { return m.w2(k, j); });
    doc["b2"] = rows(1, kMlpOutputs, [&](std::size_t, std::size_t k) { return m.b2(k); })[0];
    doc["normalization"] = {{"shift", norm.shift}, {"scale", norm.scale}};
    doc["format_version"] = kModelFormatVersion;
    return doc;
}

StoredModel model_from_json(const ordered_json& doc) {
    if (!doc.is_object()) throw ModelFormatError("model: expected a JSON object");

    const auto& version = member(doc, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
        throw ModelFormatError("model: unsupported format_version");
    }
    const auto& hidden_node = member(doc, "hidden_count");
    if (!hidden_node.is_number_unsigned() || hidden_node.get<std::size_t>() == 0) {
        throw ModelFormatError("model: hidden_count must be a positive integer");
    }
    const auto h = hidden_node.get<std::size_t>();

    StoredModel out{MlpModel(h), Normalization{}};
    const auto w1 = matrix(member(doc, "w1"), h, kMlpInputs, "w1");
    const auto b1 = numbers(member(doc, "b1"), h, "b1");
    const auto w2 = matrix(member(doc, "w2"), kMlpOutputs, h, "w2");
    const auto b2 = numbers(member(doc, "b2"), kMlpOutputs, "b2");

    MlpModel& m = out.model;
    for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t i = 0; i < kMlpInputs; ++i) m.w1(j, i) = w1[j * kMlpInputs + i];
        m.b1(j) = b1[j];
    }
    for (std::size_t k = 0; k < kMlpOutputs; ++k) {
        for (std::size_t j = 0; j < h; ++j) m.w2(k, j) = w2[k * h + j];
        m.b2(k) = b2[k];
    }

    const auto& norm = member(doc, "normalization");
    if (!norm.is_object()) throw ModelFormatError("model: normalization must be an object");
    out.normalization.shift = to_input(numbers(member(norm, "shift"), kMlpInputs, "normalization.shift"));
    out.normalization.scale = to_input(numbers(member(norm, "scale"), kMlpInputs, "normalization.scale"));

    try {
        m.validate();
        out.normalization.validate();
    } catch (const std::invalid_argument& e) {
        throw ModelFormatError(e.what());
    }
    return out;
}

void save_model(const MlpModel& model, const Normalization& norm,
                const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << model_to_json(model, norm).dump(1) << '\n';
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

StoredModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path.string() + ": cannot open model file");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw ModelFormatError(path.string() + ": " + e.what());
    }
    return model_from_json(doc);
}

void write_loss_trace(std::span<const double> losses, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << "epoch,loss\n";
    for (std::size_t e = 0; e < losses.size(); ++e) {
        // Same shortest round-trip text the model file uses.
        out << e << ',' << nlohmann::json(losses[e]).dump() << '\n';
    }
}

}  // namespace lumaswitch
