#include "sheafhist/report.hpp"

#include <sstream>

namespace sheafhist {

std::string report_to_json_text(const Report& r) { return r.dump(2) + "\n"; }

namespace {

void render_value(std::ostringstream& os, const Report& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                     (it.value()[0].is_object() || it.value()[0].is_array()))) {
        os << pad << it.key() << ":\n";
        render_value(os, it.value(), indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_object() || e.is_array()) {
        os << pad << "-\n";
        render_value(os, e, indent + 2);
      } else {
        os << pad << "- " << e.dump() << "\n";
      }
    }
  } else {
    os << pad << v.dump() << "\n";
  }
}

}  // namespace

std::string render_report(const Report& r) {
  std::ostringstream os;
  os << "sheafhist " << r.value("command", "?") << "  scenario=" << r.value("scenario", "?")
     << "  mode=" << r.value("mode", "?") << "\n";
  os << "digest=" << r.value("digest", "?") << "  epsilon=" << r.value("epsilon", 0.0) << "\n";
  if (r.contains("results")) {
    os << "results:\n";
    render_value(os, r["results"], 2);
  }
  os << "status: " << r.value("status", "?") << "\n";
  return os.str();
}

}  // namespace sheafhist
