#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "burning/builder.hpp"
#include "burning/burn.hpp"
#include "burning/caterpillar.hpp"
#include "burning/errors.hpp"
#include "burning/serialize.hpp"
#include "burning/tree.hpp"
#include "json.hpp"

namespace {

using namespace burning;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(0, "cannot write file: " + path);
    out << text;
}

bool looks_compact(const std::string& text) {
    std::size_t i = text.find_first_not_of(" \t\r\n");
    return i != std::string::npos && text.compare(i, 2, "p=") == 0;
}

Tree load_tree(const std::string& path) {
    std::string text = read_file(path);
    if (looks_compact(text)) return parse_compact(text).underlying;
    return parse_edge_list(text);
}

PCaterpillar load_caterpillar(const std::string& path, int p) {
    std::string text = read_file(path);
    if (looks_compact(text)) return parse_compact(text);
    return recognize(parse_edge_list(text), p);
}

int cmd_exact(const std::string& input, int cap) {
    Tree tree = load_tree(input);
    ExactOptions options;
    options.cap = cap;
    ExactResult res = exact_burning_number(tree, options);
    std::cout << "b=" << res.b << "\n" << cover_json(validate_cover(tree, res.cover));
    return 0;
}

int cmd_build(const std::string& input, int p, const std::string& trace_path) {
    PCaterpillar pcat = load_caterpillar(input, p);
    BuildResult res = build(pcat);
    if (!trace_path.empty()) write_file(trace_path, render_trace(res.trace));
    std::cout << certificate_json(res, trace_path);
    return 0;
}

int cmd_export(const std::string& input, const std::string& format, const std::string& cert_path,
               const std::string& out_path, int p) {
    std::string text = read_file(input);
    PCaterpillar pcat;
    if (looks_compact(text)) {
        pcat = parse_compact(text);
    } else {
        Tree tree = parse_edge_list(text);
        for (int q = p;; ++q) {  // every tree is a q-caterpillar for q large enough
            try {
                pcat = recognize(tree, q);
                break;
            } catch (const NotAPCaterpillar&) {
            }
        }
    }
    std::vector<VertexBall> balls;
    if (!cert_path.empty()) {
        nlohmann::json j = nlohmann::json::parse(read_file(cert_path));
        for (const auto& entry : j.at("balls"))
            balls.push_back({entry.at("center").get<int>(), entry.at("radius").get<int>()});
    }
    std::string doc = format == "dot" ? export_dot(pcat, balls) : export_json(pcat, balls);
    if (out_path.empty())
        std::cout << doc;
    else
        write_file(out_path, doc);
    return 0;
}

// --- verification campaigns --------------------------------------------------

struct Family {
    int p = 1;
    int t_lo = 1, t_hi = 1;
    int k_lo = 0, k_hi = 0;
    SubtreeMode mode = SubtreeMode::paths;
    int count = 0;
};

void parse_range(const std::string& text, int line, int& lo, int& hi) {
    std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw ParseError(line, "bad range: " + text);
    }
    if (lo > hi) throw ParseError(line, "empty range: " + text);
}

std::vector<Family> parse_campaign(const std::string& text) {
    std::vector<Family> families;
    std::istringstream in(text);
    std::string linebuf;
    int lineno = 0;
    while (std::getline(in, linebuf)) {
        ++lineno;
        std::istringstream line(linebuf);
        std::string token;
        Family fam;
        bool any = false;
        while (line >> token) {
            if (token[0] == '#') break;
            std::size_t eq = token.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, "expected key=value: " + token);
            std::string key = token.substr(0, eq), value = token.substr(eq + 1);
            any = true;
            if (key == "p")
                fam.p = std::stoi(value);
            else if (key == "t")
                parse_range(value, lineno, fam.t_lo, fam.t_hi);
            else if (key == "k")
                parse_range(value, lineno, fam.k_lo, fam.k_hi);
            else if (key == "mode")
                fam.mode = parse_subtree_mode(value);
            else if (key == "count")
                fam.count = std::stoi(value);
            else
                throw ParseError(lineno, "unknown key: " + key);
        }
        if (any) families.push_back(fam);
    }
    return families;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Row {
    std::string route = "-";
    int balls = 0;
    int sqrt_n = 0;
    int exact_b = -1;
    bool pass = false;
    std::string note;
};

Row run_instance(const Family& fam, std::uint64_t seed) {
    Row row;
    try {
        std::uint64_t r1 = mix64(seed), r2 = mix64(r1), r3 = mix64(r2);
        int t = fam.t_lo + static_cast<int>(r1 % static_cast<std::uint64_t>(fam.t_hi - fam.t_lo + 1));
        int k = fam.k_lo + static_cast<int>(r2 % static_cast<std::uint64_t>(fam.k_hi - fam.k_lo + 1));
        k = std::min(k, std::max(0, t - 2));
        if (fam.p == 0) k = 0;
        PCaterpillar pcat = random_caterpillar(fam.p, t, k, fam.mode, r3);
        BuildResult res = build(pcat);
        row.route = route_name(res.route);
        row.balls = static_cast<int>(res.certificate.balls.size());
        row.sqrt_n = ceil_isqrt(pcat.n());
        row.pass = res.certificate.valid;
        if (res.route != Route::greedy && row.balls > row.sqrt_n) row.pass = false;
        if (pcat.n() <= 64) {
            ExactResult exact = exact_burning_number(pcat.underlying);
            row.exact_b = exact.b;
            if (exact.b > row.sqrt_n) row.pass = false;
            if (exact.b > res.certificate.max_radius + 1) row.pass = false;
        }
    } catch (const Error& e) {
        row.pass = false;
        row.note = e.what();
    }
    return row;
}

int cmd_verify(const std::string& campaign_path, std::uint64_t seed, int jobs) {
    std::vector<Family> families = parse_campaign(read_file(campaign_path));
    std::vector<std::pair<int, int>> tasks;  // (family index, ordinal)
    for (int f = 0; f < static_cast<int>(families.size()); ++f)
        for (int c = 0; c < families[f].count; ++c) tasks.emplace_back(f, c);

    std::vector<Row> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            auto [f, c] = tasks[i];
            std::uint64_t instance_seed =
                mix64(seed ^ mix64(static_cast<std::uint64_t>(f) << 32 |
                                   static_cast<std::uint64_t>(c)));
            rows[i] = run_instance(families[f], instance_seed);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    int failed = 0;
    std::cout << "index\troute\tballs\tceil_sqrt_n\texact_b\tstatus\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        if (!row.pass) ++failed;
        std::cout << i << "\t" << row.route << "\t" << row.balls << "\t" << row.sqrt_n << "\t";
        if (row.exact_b >= 0)
            std::cout << row.exact_b;
        else
            std::cout << "-";
        std::cout << "\t" << (row.pass ? "pass" : "FAIL");
        if (!row.note.empty()) std::cout << "\t" << row.note;
        std::cout << "\n";
    }
    std::cout << "total=" << rows.size() << " passed=" << (rows.size() - failed)
              << " failed=" << failed << "\n";
    return failed == 0 ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ball covers and burning numbers for trees"};
    app.require_subcommand(1);

    std::string input, trace_path, format = "dot", cert_path, out_path, campaign_path;
    int cap = 64, p = 1, export_p = 0, jobs = 1;
    std::uint64_t seed = 1;

    CLI::App* exact = app.add_subcommand("exact", "exact burning number by branch and bound");
    exact->add_option("input", input, "edge list or compact caterpillar file")->required();
    exact->add_option("--cap", cap, "largest instance size accepted");

    CLI::App* build_cmd = app.add_subcommand("build", "construct a distinct-radii cover");
    build_cmd->add_option("input", input, "edge list or compact caterpillar file")->required();
    build_cmd->add_option("--p", p, "subtree height bound for recognition");
    build_cmd->add_option("--trace", trace_path, "write the construction trace here");

    CLI::App* verify = app.add_subcommand("verify", "run a verification campaign");
    verify->add_option("--campaign", campaign_path, "campaign description file")->required();
    verify->add_option("--seed", seed, "campaign seed");
    verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* export_cmd = app.add_subcommand("export", "render the instance");
    export_cmd->add_option("input", input, "edge list or compact caterpillar file")->required();
    export_cmd->add_option("--format", format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    export_cmd->add_option("--certificate", cert_path, "cover JSON to overlay");
    export_cmd->add_option("--out", out_path, "output file (stdout when absent)");
    export_cmd->add_option("--p", export_p, "smallest subtree height bound to try");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exact->parsed()) return cmd_exact(input, cap);
        if (build_cmd->parsed()) return cmd_build(input, p, trace_path);
        if (verify->parsed()) return cmd_verify(campaign_path, seed, jobs);
        if (export_cmd->parsed()) return cmd_export(input, format, cert_path, out_path, export_p);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NotATree& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const SearchCapExceeded& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NotAPCaterpillar& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const RootAtSpineEnd& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
