#pragma once

#include <json.hpp>

#include "umfw/amenability.hpp"
#include "umfw/dynamics.hpp"
#include "umfw/fraisse.hpp"
#include "umfw/orders.hpp"
#include "umfw/ramsey.hpp"
#include "umfw/samuel.hpp"
#include "umfw/structures.hpp"

namespace umfw {

using Json = nlohmann::json;

// Structures serialize as {kind, params, relations}; adjacency rows are
// lowercase-hex bitmask strings, orders plain rank arrays.
Json structure_to_json(const FinStructure& s);
FinStructure structure_from_json(const Json& j);

Json order_to_json(const LinearOrder& o);
Json coloring_to_json(const Coloring& c);
Json certificate_to_json(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                         const ArrowCertificate& cert);

Json minimality_to_json(const MinimalityReport& r);
Json flow_report_to_json(const FlowReport& r);
Json amenability_to_json(const AmenabilityReport& r);
Json samuel_report_to_json(const SamuelInstanceReport& r);
Json forgetfulness_to_json(const ForgetfulnessReport& r);

// Canonical text form used everywhere a report is printed or cached: two
// space indent, sorted keys (nlohmann objects iterate sorted), single
// trailing newline.
std::string dump_json(const Json& j);

}  // namespace umfw
