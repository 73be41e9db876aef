#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "progmom/empirical.hpp"
#include "progmom/limitlaws.hpp"
#include "progmom/model.hpp"
#include "progmom/predictor.hpp"

namespace progmom {

// All numeric output goes through one pinned format (17 significant
// digits) so serialized reports are byte-stable across runs and thread
// counts.
std::string format_double(double v);

// Insertion-ordered JSON emitter; numbers are formatted with
// format_double, never with locale- or shortest-repr-dependent paths.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s);

    JsonWriter& field(const std::string& k, double v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, std::uint64_t v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, int v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, bool v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, const std::string& v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, const char* v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, const std::vector<double>& v);

    std::string str() const { return out_; }

private:
    void separator();
    std::string out_;
    std::vector<bool> needs_comma_;
    bool pending_key_ = false;
};

void write_text_file(const std::string& path, const std::string& content);

// Report serializers (schemas documented in the README).
std::string moment_report_json(const MomentReport& report);
std::string moment_report_csv(const MomentReport& report);
std::string predicted_moments_json(const PredictedMoments& pred);
std::string comparison_json(const MomentReport& report, const std::vector<PredictedMoments>& preds,
                            const BoundedMomentReport* bounded);
std::string simulation_json(const SimulationResult& sim, const TwoValuedModel& model);
std::string samples_csv(const SimulationResult& sim, std::uint64_t cap);
std::string ks_report_json(std::uint64_t n, std::uint64_t sample_size, double distance,
                           const std::string& reference, double binning_slack);
std::string profile_csv(const ConditionProfile& profile, const KolmogorovFunction& kf);
std::string histogram_csv(const EmpiricalDistribution& dist);

}  // namespace progmom
