// report.hpp: structured run reports: a JSON document plus a deterministic
// text rendering for terminals.
#pragma once

#include <string>

#include <json.hpp>

namespace sheafhist {

using Report = nlohmann::ordered_json;

// The exact bytes written by --out; parsing and re-dumping is the identity.
std::string report_to_json_text(const Report& r);

// Human-oriented rendering for stdout.  Deterministic for fixed inputs.
std::string render_report(const Report& r);

}  // namespace sheafhist
