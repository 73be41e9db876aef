#include "progmom/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "progmom/errors.hpp"

namespace progmom {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) out_ += ',';
        needs_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += '{';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += '[';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    separator();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
    separator();
    out_ += '"';
    for (char c : s) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            default: out_ += c;
        }
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::field(const std::string& k, const std::vector<double>& v) {
    key(k).begin_array();
    for (double x : v) value(x);
    return end_array();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("io", "short write: " + path);
}

namespace {

void spec_object(JsonWriter& w, const ProgressionSpec& spec) {
    w.begin_object()
        .field("k", spec.k)
        .field("l", spec.l)
        .field("n", spec.n)
        .end_object();
}

}  // namespace

std::string moment_report_json(const MomentReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("spec");
    spec_object(w, report.spec);
    w.field("count", report.count)
        .field("mean", report.mean)
        .field("central_moments", report.central_moments)
        .field("max_order", static_cast<std::uint64_t>(report.max_order))
        .end_object();
    return w.str() + "\n";
}

std::string moment_report_csv(const MomentReport& report) {
    std::string out = "order,value\n";
    out += "1," + format_double(report.mean) + "\n";
    for (unsigned u = 2; u <= report.max_order; ++u)
        out += std::to_string(u) + "," + format_double(report.central_moment(u)) + "\n";
    return out;
}

std::string predicted_moments_json(const PredictedMoments& pred) {
    JsonWriter w;
    w.begin_object();
    w.key("spec");
    spec_object(w, pred.spec);
    w.field("mode", to_string(pred.mode));
    w.key("orders").begin_array();
    for (unsigned u = 1; u <= pred.max_order; ++u) w.value(static_cast<std::uint64_t>(u));
    w.end_array();
    w.field("sums", pred.sums).field("B", pred.B);
    double lnln = std::log(std::log(static_cast<double>(pred.spec.n)));
    double phik = static_cast<double>(euler_phi(pred.spec.k));
    std::vector<double> leading;
    double power = 1.0;
    for (unsigned u = 1; u <= pred.max_order; ++u) {
        power *= lnln;
        leading.push_back(power / phik);
    }
    w.field("leading_terms", leading).end_object();
    return w.str() + "\n";
}

std::string comparison_json(const MomentReport& report, const std::vector<PredictedMoments>& preds,
                            const BoundedMomentReport* bounded) {
    JsonWriter w;
    w.begin_object();
    w.key("spec");
    spec_object(w, report.spec);
    w.key("empirical")
        .begin_object()
        .field("count", report.count)
        .field("mean", report.mean)
        .field("central_moments", report.central_moments)
        .end_object();
    w.key("predicted").begin_object();
    for (const auto& pred : preds) {
        w.key(to_string(pred.mode))
            .begin_object()
            .field("sums", pred.sums)
            .field("B", pred.B)
            .end_object();
    }
    w.end_object();
    w.key("ratios").begin_object();
    for (const auto& pred : preds) {
        std::vector<double> ratios;
        // order 1: empirical mean vs S_1; order u >= 2: central moment vs S_u
        ratios.push_back(pred.sums[0] != 0.0 ? report.mean / pred.sums[0]
                                             : std::numeric_limits<double>::quiet_NaN());
        for (unsigned u = 2; u <= report.max_order && u <= pred.max_order; ++u)
            ratios.push_back(pred.sums[u - 1] != 0.0
                                 ? report.central_moment(u) / pred.sums[u - 1]
                                 : std::numeric_limits<double>::quiet_NaN());
        w.field(to_string(pred.mode), ratios);
    }
    w.end_object();
    if (bounded) {
        w.key("bounded_check")
            .begin_object()
            .field("sup_abs_fp", bounded->sup_abs_fp)
            .field("sup_at", bounded->sup_at)
            .field("tail_difference", bounded->tail_difference)
            .field("sup_bound", bounded->sup_bound)
            .field("tail_tolerance", bounded->tail_tolerance)
            .field("bounded_evidence", bounded->bounded_evidence)
            .end_object();
    }
    w.end_object();
    return w.str() + "\n";
}

std::string simulation_json(const SimulationResult& sim, const TwoValuedModel& model) {
    JsonWriter w;
    w.begin_object();
    w.key("model").begin_object();
    w.key("spec");
    spec_object(w, model.spec);
    w.field("mode", to_string(model.mode))
        .field("entries", static_cast<std::uint64_t>(model.entries.size()))
        .end_object();
    w.field("trials", sim.trials).field("seed", sim.seed);
    w.key("exact")
        .begin_object()
        .field("mean", sim.exact.mean)
        .field("variance", sim.exact.variance)
        .field("asymptotic_variance", sim.exact.asymptotic_variance)
        .field("central_moments", sim.exact.central_moments)
        .field("cumulants", sim.exact.cumulants)
        .end_object();
    w.key("sample")
        .begin_object()
        .field("mean", sim.sample.mean)
        .field("central_moments", sim.sample.central_moments)
        .field("mean_se", sim.sample.mean_se)
        .field("central_moment_se", sim.sample.central_moment_se)
        .end_object();
    std::vector<double> deviations;
    deviations.push_back(sim.sample.mean_se > 0.0
                             ? (sim.sample.mean - sim.exact.mean) / sim.sample.mean_se
                             : 0.0);
    for (std::size_t i = 0; i < sim.sample.central_moments.size(); ++i) {
        double se = sim.sample.central_moment_se[i];
        deviations.push_back(se > 0.0 ? (sim.sample.central_moments[i] - sim.exact.central_moments[i]) / se
                                      : 0.0);
    }
    w.field("deviation_in_se", deviations).end_object();
    return w.str() + "\n";
}

std::string samples_csv(const SimulationResult& sim, std::uint64_t cap) {
    std::string out = "trial,value\n";
    std::uint64_t rows = std::min<std::uint64_t>(sim.trials, cap);
    for (std::uint64_t t = 0; t < rows; ++t)
        out += std::to_string(t) + "," + format_double(sim.raw_samples[static_cast<std::size_t>(t)]) + "\n";
    return out;
}

std::string ks_report_json(std::uint64_t n, std::uint64_t sample_size, double distance,
                           const std::string& reference, double binning_slack) {
    JsonWriter w;
    w.begin_object()
        .field("n", n)
        .field("sample_size", sample_size)
        .field("distance", distance)
        .field("reference", reference)
        .field("binning_slack", binning_slack)
        .end_object();
    return w.str() + "\n";
}

std::string profile_csv(const ConditionProfile& profile, const KolmogorovFunction& kf) {
    std::string out = "u,F_n,K,abs_diff\n";
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        double u = profile.grid[i];
        double fn = profile.values[i];
        double k = kf(u);
        out += format_double(u) + "," + format_double(fn) + "," + format_double(k) + "," +
               format_double(std::abs(fn - k)) + "\n";
    }
    return out;
}

std::string histogram_csv(const EmpiricalDistribution& dist) {
    std::string out = "bin_edge,count\n";
    if (!dist.is_histogram) {
        for (double s : dist.samples) out += format_double(s) + ",1\n";
        return out;
    }
    const double width = (EmpiricalDistribution::kHistHi - EmpiricalDistribution::kHistLo) /
                         EmpiricalDistribution::kHistBins;
    out += "-inf," + std::to_string(dist.underflow) + "\n";
    for (std::size_t b = 0; b < dist.counts.size(); ++b) {
        double edge = EmpiricalDistribution::kHistLo + width * static_cast<double>(b);
        out += format_double(edge) + "," + std::to_string(dist.counts[b]) + "\n";
    }
    out += format_double(EmpiricalDistribution::kHistHi) + "," + std::to_string(dist.overflow) + "\n";
    return out;
}

}  // namespace progmom
