// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails or exceeds its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lumaswitch/blobs.hpp"
#include "lumaswitch/cli.hpp"
#include "lumaswitch/switching.hpp"
#include "oracles.hpp"

namespace {

using namespace lumaswitch;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Collects the first few failed checks of one criterion.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    bool ok() const { return failures_ == 0; }
    std::string notes() const {
        if (failures_ <= 3) return notes_;
        return notes_ + "; +" + std::to_string(failures_ - 3) + " more";
    }

private:
    int failures_ = 0;
    std::string notes_;
};

template <class T>
std::string str(const T& v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void criterion1(Checks& c) {
    const SkinRangeFilter f = SkinRangeFilter::table_defaults();
    const auto is = [&](const ChannelRange& r, double lo, double hi, const char* name) {
        c.expect(r.lo() == lo && r.hi() == hi,
                 std::string(name) + " = [" + str(r.lo()) + ", " + str(r.hi()) + "]");
    };
    is(f.rgb.r, 95, 255, "R");
    is(f.rgb.g, 40, 255, "G");
    is(f.rgb.b, 20, 255, "B");
    is(f.hsv.h, 0.04, 0.0882, "H");
    is(f.hsv.s, 0.11, 0.68, "S");
    is(f.hsv.v, 0.38, 1.0, "V (default reading)");
    is(f.ycbcr.cb, 100, 125, "Cb");
    is(f.ycbcr.cr, 135, 170, "Cr");
    const SkinRangeFilter alt = SkinRangeFilter::table_defaults(ValueRangeReading::Swapped);
    is(alt.hsv.v, 0.112, 0.38, "V (swapped reading)");
    std::istringstream in("hsv.v.reading = swapped\n");
    std::ostringstream log;
    c.expect(parse_filter_config(in, log).hsv.v == alt.hsv.v, "config cannot select swapped V");
}

void criterion2(Checks& c) {
    std::mt19937 rng(20240);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int n = 0; n < 10000; ++n) {
        const Rgb p{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                    static_cast<std::uint8_t>(byte(rng))};
        const HsvPixel h = rgb_to_hsv(p);
        const auto back = oracle::hsv_to_rgb(h.h, h.s, h.v);
        const double orig[3] = {double(p.r), double(p.g), double(p.b)};
        for (int k = 0; k < 3; ++k) {
            c.expect(std::fabs(back[k] / 255.0 - orig[k] / 255.0) <= 1.0 / 255.0,
                     "round trip of pixel " + std::to_string(n));
        }
    }
    for (int v = 0; v < 256; ++v) {
        const auto g = static_cast<std::uint8_t>(v);
        const YcbcrPixel y = rgb_to_ycbcr({g, g, g});
        c.expect(std::fabs(y.cb - 128) <= 1e-9 && std::fabs(y.cr - 128) <= 1e-9,
                 "gray " + std::to_string(v) + " chroma");
    }
    // colorsys values and the full-range luma/chroma weights for (180,120,100)
    const HsvPixel h = rgb_to_hsv(fixtures::kSkinTone);
    const YcbcrPixel y = rgb_to_ycbcr(fixtures::kSkinTone);
    c.expect(std::fabs(h.h - 0.041666666666666664) <= 1e-6, "worked h " + str(h.h));
    c.expect(std::fabs(h.s - 0.4444444444444445) <= 1e-6, "worked s " + str(h.s));
    c.expect(std::fabs(h.v - 0.7058823529411765) <= 1e-6, "worked v " + str(h.v));
    c.expect(std::fabs(y.y - 135.66) <= 1e-6, "worked y " + str(y.y));
    c.expect(std::fabs(y.cb - 107.87584) <= 1e-6, "worked cb " + str(y.cb));
    c.expect(std::fabs(y.cr - 159.62624) <= 1e-6, "worked cr " + str(y.cr));
}

void criterion3(Checks& c) {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> density(0.1, 0.7);
    for (int n = 0; n < 1000; ++n) {
        const BinaryMask m = fixtures::random_mask(rng, 32, density(rng));
        const ComponentLabeling l = label_components(m);
        std::vector<std::set<std::size_t>> parts(l.component_count());
        for (std::size_t i = 0; i < l.labels.size(); ++i) {
            if (l.labels[i] != 0) parts[l.labels[i] - 1].insert(i);
        }
        c.expect(parts == oracle::components(m), "partition differs on mask " + std::to_string(n));

        const auto expected = oracle::largest(m);
        const LargestComponent got = largest_component(m);
        std::set<std::size_t> bits;
        for (std::size_t i = 0; i < got.mask.size(); ++i) {
            if (got.mask.bits()[i]) bits.insert(i);
        }
        c.expect(bits == expected && got.size == expected.size(),
                 "largest blob differs on mask " + std::to_string(n));
    }
}

void criterion4(Checks& c) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> logit(-50, 50);
    for (int n = 0; n < 10000; ++n) {
        const auto p = softmax({logit(rng), logit(rng), logit(rng)});
        c.expect(std::fabs(p[0] + p[1] + p[2] - 1.0) <= 1e-12, "softmax sum on draw " + std::to_string(n));
    }
    const auto big = softmax({1000, 0, 0});
    c.expect(std::isfinite(big[0]) && std::isfinite(big[1]) && std::isfinite(big[2]) &&
                 std::fabs(big[0] - 1.0) <= 1e-12,
             "softmax(1000,0,0) overflowed");

    const auto data = fixtures::separable_training_set();
    std::vector<FeatureVector> feats;
    for (const auto& ex : data) feats.push_back(ex.features);
    const Normalization norm = Normalization::fit(feats);
    const MlpModel model = MlpModel::random(15, 2024);
    const auto analytic = loss_and_gradient(model, data, norm).gradient;
    const auto numeric = oracle::numeric_gradient(model, data, norm, 1e-5);
    c.expect(analytic.size() == MlpModel::parameter_count(15) && numeric.size() == analytic.size(),
             "gradient size");
    for (std::size_t p = 0; p < analytic.size(); ++p) {
        const double scale = std::max(std::fabs(analytic[p]), std::fabs(numeric[p]));
        const double rel = scale > 0 ? std::fabs(analytic[p] - numeric[p]) / scale : 0.0;
        c.expect(rel < 1e-4, "parameter " + std::to_string(p) + " relative error " + str(rel));
    }
}

void criterion5(Checks& c) {
    fixtures::TempDir dir("accept5");
    const fs::path manifest = fixtures::write_separable_manifest(dir.path());
    const std::string model = (dir / "model.json").string();
    std::ostringstream out, err;
    int status = cli::run({"lumaswitch", "train", manifest.string(), "--model", model, "--epochs",
                           "2000", "--learning-rate", "0.01", "--seed", "1"},
                          out, err);
    c.expect(status == cli::kSuccess, "train exited " + std::to_string(status) + ": " + err.str());
    c.expect(out.str().find("training accuracy: 100.00% (30/30)") != std::string::npos,
             "training accuracy below 100%: " + out.str());

    std::ostringstream eval_out, eval_err;
    status = cli::run({"lumaswitch", "eval", manifest.string(), "--model", model}, eval_out, eval_err);
    c.expect(status == cli::kSuccess, "eval exited " + std::to_string(status) + ": " + eval_err.str());
    const std::string text = eval_out.str();
    c.expect(text.find("overall accuracy: 100.00% (30/30)") != std::string::npos,
             "eval table not fully diagonal");
    const auto brace = text.find('{');
    c.expect(brace != std::string::npos &&
                 ordered_json::parse(text.substr(brace))["confusion"] ==
                     ordered_json::parse("[[10,0,0],[0,10,0],[0,0,10]]"),
             "confusion matrix not diagonal");
}

BinaryMask blob_oracle(const ImageBuffer& img, ColorSpaceId space, const SkinRangeFilter& f) {
    BinaryMask raw(img.width(), img.height());
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) raw.set(x, y, classify_in_space(space, img.at(x, y), f));
    }
    BinaryMask out(img.width(), img.height());
    for (std::size_t i : oracle::largest(oracle::vote_filter(raw, kDenoiseVotes))) {
        out.set(i % img.width(), i / img.width(), true);
    }
    return out;
}

void criterion6(Checks& c) {
    const SkinRangeFilter filters[] = {SkinRangeFilter::table_defaults(),
                                       SkinRangeFilter::table_defaults(ValueRangeReading::Swapped)};
    std::mt19937 rng(66);

    // (a) forced-space bias models
    for (int n = 0; n < 10; ++n) {
        const ImageBuffer img = fixtures::random_scene(rng, 96);
        for (ColorSpaceId s : kAllSpaces) {
            MlpModel m = MlpModel::random(15, static_cast<std::uint64_t>(n));
            for (std::size_t j = 0; j < m.hidden_count(); ++j) {
                for (std::size_t k = 0; k < kMlpOutputs; ++k) m.w2(k, j) = 0.0;
            }
            for (std::size_t k = 0; k < kMlpOutputs; ++k) m.b2(k) = k == index_of(s) ? 4.0 : 0.0;
            const auto r = algorithm1_ann_switch(img, {m, Normalization{}}, filters[0]);
            const auto d = bayesian_routine(img, s, filters[0]);
            c.expect(r.chosen == s && r.mask == d.mask && r.overlay == d.overlay &&
                         r.raw_mask == d.raw && r.blob_size == d.blob_size,
                     "forced " + std::string(to_string(s)) + " differs on image " + std::to_string(n));
        }
    }

    // (b) argmax of independently recomputed sizes, (c) union then largest
    for (int n = 0; n < 50; ++n) {
        const ImageBuffer img = fixtures::random_scene(rng);
        const SkinRangeFilter& f = filters[n % 2];
        BinaryMask blobs[3];
        for (ColorSpaceId s : kAllSpaces) blobs[index_of(s)] = blob_oracle(img, s, f);
        std::size_t best = 0;
        for (std::size_t k = 1; k < 3; ++k) {
            if (blobs[k].count() > blobs[best].count()) best = k;
        }
        const auto r2 = algorithm2_max_connected(img, f);
        c.expect(r2.chosen && index_of(*r2.chosen) == best && r2.blob_size == blobs[best].count(),
                 "algorithm2 choice on image " + std::to_string(n));

        BinaryMask unioned(img.width(), img.height());
        for (std::size_t i = 0; i < unioned.size(); ++i) {
            const bool any = blobs[0].bits()[i] || blobs[1].bits()[i] || blobs[2].bits()[i];
            unioned.set(i % img.width(), i / img.width(), any);
        }
        BinaryMask expected(img.width(), img.height());
        for (std::size_t i : oracle::largest(unioned)) expected.set(i % img.width(), i / img.width(), true);
        const auto r3 = algorithm3_sigma_connect(img, f, 1);
        c.expect(r3.mask == expected, "algorithm3 mask on image " + std::to_string(n));
    }
}

void criterion7(Checks& c) {
    const ImageBuffer img = fixtures::patch_with_salt();
    const BinaryMask patch = fixtures::patch_mask();
    const SkinRangeFilter f = SkinRangeFilter::table_defaults();
    MlpModel forced(15);
    forced.b2(1) = 3.0;  // route to HSV
    c.expect(algorithm1_ann_switch(img, {forced, Normalization{}}, f).mask == patch, "ann mask");
    c.expect(algorithm2_max_connected(img, f).mask == patch, "maxconnected mask");
    for (int t = 1; t <= 3; ++t) {
        c.expect(algorithm3_sigma_connect(img, f, t).mask == patch,
                 "sigmaconnect mask at threshold " + std::to_string(t));
    }

    fixtures::TempDir dir("accept7");
    save_image(img, dir / "salt.ppm");
    save_model(forced, Normalization{}, dir / "forced.json");
    for (const char* strategy : {"ann", "maxconnected", "sigmaconnect"}) {
        const fs::path out_dir = dir / strategy;
        std::ostringstream out, err;
        const int status =
            cli::run({"lumaswitch", "segment", (dir / "salt.ppm").string(), "--strategy", strategy,
                      "--model", (dir / "forced.json").string(), "--out-dir", out_dir.string()},
                     out, err);
        const std::string tag = std::string(strategy) + ": ";
        c.expect(status == cli::kSuccess, tag + "exit " + std::to_string(status) + " " + err.str());
        try {
            const BinaryMask mask = load_mask(out_dir / "salt.mask.pgm");
            const BinaryMask raw = load_mask(out_dir / "salt.raw.pgm");
            const ImageBuffer ov = load_image(out_dir / "salt.overlay.ppm");
            c.expect(mask == patch, tag + "written mask differs from the patch");
            c.expect(raw.width() == 64 && raw.height() == 64, tag + "raw mask dimensions");
            c.expect(ov.width() == 64 && ov.height() == 64 && ov == fixtures::patch_image(),
                     tag + "overlay");
            const auto line = ordered_json::parse(out.str());
            c.expect(line["blob_size"] == 256, tag + "JSON blob_size " + line["blob_size"].dump());
        } catch (const std::exception& e) {
            c.expect(false, tag + e.what());
        }
    }
}

void criterion8(Checks& c) {
    fixtures::TempDir dir("accept8");
    const std::string text =
        R"({"hidden_count":3,)"
        R"("w1":[[-0.1165,0.826,0.1047,-0.065,-0.4442,-0.7919,0.8983,-1.3138,-0.093],)"
        R"([0.7747,1.049,-0.7296,-0.178,-0.4034,0.3964,0.1476,-0.3533,1.1496],)"
        R"([-0.6271,0.0365,-0.0245,0.7946,0.6055,-0.6684,-0.8766,0.7518,0.9167]],)"
        R"("b1":[2.0715,-1.9243,1.8362],)"
        R"("w2":[[0.539833,-0.41466,0.128368],[-0.33529,-0.26512,0.292686],[-0.32967,-0.55298,0.229643]],)"
        R"("b2":[0,0,0],)"
        R"("normalization":{"shift":[0,0,0,0,0,0,0,0,0],"scale":[1,1,1,1,1,1,1,1,1]},)"
        R"("format_version":1})";
    fixtures::write_bytes(dir / "fixture.json", text);
    const double w2[3][3] = {{0.539833, -0.41466, 0.128368},
                             {-0.33529, -0.26512, 0.292686},
                             {-0.32967, -0.55298, 0.229643}};
    const double b1[3] = {2.0715, -1.9243, 1.8362};
    try {
        const StoredModel s = load_model(dir / "fixture.json");
        for (std::size_t j = 0; j < 3; ++j) {
            c.expect(s.model.b1(j) == b1[j], "b1[" + std::to_string(j) + "]");
            for (std::size_t k = 0; k < 3; ++k) {
                c.expect(s.model.w2(j, k) == w2[j][k],
                         "w2 row " + std::to_string(j) + " col " + std::to_string(k));
            }
        }
        c.expect(s.model.w1(0, 1) == 0.8260 && s.model.w1(2, 8) == 0.9167, "w1 cells");
        save_model(s.model, s.normalization, dir / "a.json");
        const StoredModel again = load_model(dir / "a.json");
        c.expect(again.model == s.model && again.normalization == s.normalization, "reload differs");
        save_model(again.model, again.normalization, dir / "b.json");
        c.expect(fixtures::read_bytes(dir / "a.json") == fixtures::read_bytes(dir / "b.json"),
                 "second save not byte-identical");
    } catch (const std::exception& e) {
        c.expect(false, e.what());
    }

    const FeatureVector row{0.162068, 0.340032, 0.372549, 110.34945, 117.01452,
                            139.58895, 128.38988, 104.7, 87.5811};
    const FeatureVector back = feature_vector_from_json(ordered_json::parse(to_json(row).dump()));
    c.expect(back.as_array() == row.as_array(), "feature vector round trip is lossy");
}

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Checks&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "default filter ranges", 1, criterion1},
        {2, "color conversions", 5, criterion2},
        {3, "connectivity oracle", 30, criterion3},
        {4, "MLP numerics", 30, criterion4},
        {5, "training sanity", 60, criterion5},
        {6, "strategy equivalences", 60, criterion6},
        {7, "end-to-end fixture", 10, criterion7},
        {8, "serialization fixtures", 1, criterion8},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Checks checks;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(checks);
        } catch (const std::exception& e) {
            checks.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= cr.budget_s) checks.expect(false, "took longer than " + str(cr.budget_s) + " s");
        if (!checks.ok()) ++failed;
        std::printf("%s [%d] %-24s %8.3f s (limit %g s)%s%s\n", checks.ok() ? "PASS" : "FAIL", cr.id,
                    cr.title, secs, cr.budget_s, checks.ok() ? "" : "  ", checks.notes().c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
