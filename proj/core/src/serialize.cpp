#include "burning/serialize.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "json.hpp"

namespace burning {

namespace {

nlohmann::json cover_fields(const CoverCertificate& cert) {
    nlohmann::json j;
    j["balls"] = nlohmann::json::array();
    for (const VertexBall& b : cert.balls)
        j["balls"].push_back({{"center", b.center}, {"radius", b.radius}});
    j["max_radius"] = cert.max_radius;
    j["valid"] = cert.valid;
    return j;
}

}  // namespace

std::string cover_json(const CoverCertificate& cert) { return cover_fields(cert).dump(2) + "\n"; }

std::string certificate_json(const BuildResult& result, const std::string& trace_file) {
    nlohmann::json j = cover_fields(result.certificate);
    j["ball_count"] = static_cast<int>(result.certificate.balls.size());
    j["n"] = result.n;
    j["p"] = result.p;
    j["route"] = route_name(result.route);
    j["trace_file"] = trace_file;
    return j.dump(2) + "\n";
}

std::string render_trace(const Trace& trace) {
    std::string out;
    int i = 0;
    for (const TraceStep& s : trace.steps) {
        out += "step=" + std::to_string(++i) + " op=" + s.op +
               " stage=" + std::to_string(s.stage) + " eps=" + std::to_string(s.eps) +
               " balls=" + s.balls + "\n";
    }
    return out;
}

std::string tree_dot(const Tree& tree) {
    std::string out = "graph tree {\n";
    for (int v = 0; v < tree.n; ++v) out += "  " + std::to_string(v) + ";\n";
    for (const auto& [u, v] : tree.edges)
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

std::string tree_json(const Tree& tree) {
    nlohmann::json j;
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : tree.edges) j["edges"].push_back({u, v});
    j["n"] = tree.n;
    return j.dump(2) + "\n";
}

namespace {

// Spine position each vertex projects to: its own position on the spine, or
// the position of the root its subtree hangs from.
std::vector<int> spine_projection(const PCaterpillar& pcat) {
    std::vector<int> pos(static_cast<std::size_t>(pcat.n()), 0);
    for (int i = 0; i < pcat.t(); ++i) pos[static_cast<std::size_t>(pcat.spine[i])] = i + 1;
    for (const Root& r : pcat.roots)
        for (int v : r.vertices) pos[static_cast<std::size_t>(v)] = r.spine_index;
    return pos;
}

}  // namespace

std::string export_dot(const PCaterpillar& pcat, const std::vector<VertexBall>& balls) {
    std::vector<int> pos = spine_projection(pcat);
    std::string out = "graph caterpillar {\n";
    out += "  // spine: " + std::to_string(pcat.t()) + " vertices, p=" + std::to_string(pcat.p) +
           "\n";
    for (const Root& r : pcat.roots)
        out += "  // root position=" + std::to_string(r.spine_index) +
               " vertex=" + std::to_string(r.vertex) + " h=" + std::to_string(r.h) +
               " nv=" + std::to_string(r.nv) + "\n";
    int i = 0;
    for (const VertexBall& b : balls) {
        int c = pos[static_cast<std::size_t>(b.center)];
        int lo = std::max(1, c - b.radius), hi = std::min(pcat.t(), c + b.radius);
        out += "  // ball " + std::to_string(++i) + ": center=" + std::to_string(b.center) +
               " radius=" + std::to_string(b.radius) + " spine=[" + std::to_string(lo) + "," +
               std::to_string(hi) + "]\n";
    }
    for (int s = 0; s < pcat.t(); ++s)
        out += "  " + std::to_string(pcat.spine[s]) + " [label=\"s" + std::to_string(s + 1) +
               "\"];\n";
    for (const Root& r : pcat.roots)
        out += "  " + std::to_string(r.vertex) + " [style=filled, fillcolor=lightblue];\n";
    for (const auto& [u, v] : pcat.underlying.edges)
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

std::string export_json(const PCaterpillar& pcat, const std::vector<VertexBall>& balls) {
    std::vector<int> pos = spine_projection(pcat);
    nlohmann::json j;
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : pcat.underlying.edges) j["edges"].push_back({u, v});
    j["n"] = pcat.n();
    j["p"] = pcat.p;
    j["spine"] = pcat.spine;
    j["roots"] = nlohmann::json::array();
    for (const Root& r : pcat.roots)
        j["roots"].push_back(
            {{"h", r.h}, {"nv", r.nv}, {"position", r.spine_index}, {"vertex", r.vertex}});
    j["balls"] = nlohmann::json::array();
    for (const VertexBall& b : balls) {
        int c = pos[static_cast<std::size_t>(b.center)];
        j["balls"].push_back({{"center", b.center},
                              {"radius", b.radius},
                              {"spine_left", std::max(1, c - b.radius)},
                              {"spine_right", std::min(pcat.t(), c + b.radius)}});
    }
    return j.dump(2) + "\n";
}

}  // namespace burning
