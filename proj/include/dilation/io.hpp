#pragma once

#include "dilation/admit.hpp"
#include "dilation/linalg.hpp"
#include "dilation/verify.hpp"
#include "dilation/wavelet.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace dilation {

using Json = nlohmann::json;

/// {"n": 2, "rows": [[1, 1], [0, 1]]}
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"status", "criterion" (null when none), "certificate", "paper_ref"}
Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json profile_to_json(const Profile& p);
Profile profile_from_json(const Json& j);

/// {"kind": "profile" | "indicator" | "transported", ...}
Json wavelet_to_json(const WaveletSpec& w);
WaveletSpec wavelet_from_json(const Json& j);

Json delta_report_to_json(const DeltaReport& r);
DeltaReport delta_report_from_json(const Json& j);

Json growth_table_to_json(const GrowthTable& g);
GrowthTable growth_table_from_json(const Json& j);

Json lie_table_to_json(const std::vector<LieRow>& rows);

/// Parses text, turning syntax errors into ParseError.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

/// CSV writers, every number printed with 17 significant digits.
void write_delta_csv(std::ostream& os, const DeltaReport& r);
void write_growth_csv(std::ostream& os, const GrowthTable& g);
void write_lie_csv(std::ostream& os, const std::vector<LieRow>& rows);

ProbeKind probe_kind_from_string(std::string_view s);

} // namespace dilation
