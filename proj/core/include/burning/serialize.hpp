#pragma once

#include <string>

#include "burning/builder.hpp"
#include "burning/burn.hpp"
#include "burning/cocoon.hpp"
#include "burning/tree.hpp"

namespace burning {

// {"balls": [{"center": c, "radius": r}, ...], "max_radius": m, "valid": b}
// with keys sorted and all numbers integral.
std::string cover_json(const CoverCertificate& cert);

// cover_json fields plus ball_count, n, p, route and trace_file.
std::string certificate_json(const BuildResult& result, const std::string& trace_file);

// One line per step: "step=<i> op=<op> stage=<j> eps=<e> balls=<intervals>".
std::string render_trace(const Trace& trace);

std::string tree_dot(const Tree& tree);
std::string tree_json(const Tree& tree);

// Graph renderings with the spine order, root markers and, when balls are
// supplied, their spine intervals as annotations.
std::string export_dot(const PCaterpillar& pcat, const std::vector<VertexBall>& balls);
std::string export_json(const PCaterpillar& pcat, const std::vector<VertexBall>& balls);

}  // namespace burning
