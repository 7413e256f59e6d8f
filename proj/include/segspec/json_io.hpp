#pragma once

#include "segspec/classify.hpp"
#include "segspec/growth.hpp"
#include "segspec/spectra.hpp"
#include "segspec/verify.hpp"

#include <json.hpp>

namespace segspec {

using Json = nlohmann::ordered_json;

// Scalars encode as "p/q" (or "p") when rational and as
// {"rat":"p/q","sqrt2":"r/s"} otherwise; both forms are accepted on input.
Json scalar_to_json(const ExactScalar& x);
ExactScalar scalar_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json measure_to_json(const Measure& m);
Measure measure_from_json(const Json& j);

Json spectrum_to_json(const SpectrumSpec& s);
SpectrumSpec spectrum_from_json(const Json& j);

Json cross_config_to_json(const CrossConfig& c);
CrossConfig cross_config_from_json(const Json& j);

Json classification_to_json(const ClassificationResult& r);
Json verification_to_json(const VerificationReport& r);
Json feasibility_to_json(const FeasibilityReport& r);
Json angle_set_to_json(const AngleIntervalSet& a);
Json growth_profile_to_json(const GrowthProfile& g);
Json entropy_report_to_json(const EntropyBoundReport& r);

}  // namespace segspec
