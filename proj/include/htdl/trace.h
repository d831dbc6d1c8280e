// Rendering of recorded derivations.

#ifndef HTDL_TRACE_H_
#define HTDL_TRACE_H_

#include <string>
#include <vector>

#include "htdl/engine.h"

namespace htdl {

enum class TraceFormat { kDot, kJsonLines };

// DOT digraph with one node per record and edges labeled "rule/choice", or
// one JSON object per record and line.
std::string ExportTrace(const std::vector<TraceRecord>& trace,
                        TraceFormat format);

}  // namespace htdl

#endif  // HTDL_TRACE_H_
