#include "htdl/trace.h"

#include <sstream>

#include <json.hpp>

namespace htdl {
namespace {

std::string DotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string ToDot(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out << "digraph derivation {\n";
  for (const TraceRecord& r : trace) {
    out << "  n" << r.node << " [label=\"" << r.node << ": " << r.rule
        << "\"];\n";
  }
  for (const TraceRecord& r : trace) {
    if (r.parent < 0) continue;
    out << "  n" << r.parent << " -> n" << r.node << " [label=\""
        << DotEscape(r.rule + "/" + std::to_string(r.choice)) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string ToJsonLines(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const TraceRecord& r : trace) {
    nlohmann::json j;
    j["node"] = r.node;
    j["parent"] = r.parent;
    j["rule"] = r.rule;
    j["choice"] = r.choice;
    j["added"] = r.added;
    j["removed"] = r.removed;
    j["blocking"] = r.blocking;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace

std::string ExportTrace(const std::vector<TraceRecord>& trace,
                        TraceFormat format) {
  return format == TraceFormat::kDot ? ToDot(trace) : ToJsonLines(trace);
}

}  // namespace htdl
