/**
 * Command-line front end.
 *
 * Subcommands:
 *   cohomology   Cech cohomology of a space (graph or metric input)
 *   scan         cohomology across a range of metric scales
 *   nerve        nerve of the canonical cover, as JSON and/or DOT
 *   check-sheaf  presheaf laws + sheaf condition over the lattice
 *   check-flabby surjectivity of all restrictions from the whole space
 *   axioms       randomized closure/cover law suites
 *
 * Exit codes: 0 success, 1 invalid input, 2 a configured cap was exceeded
 * or a sheaf verdict is indeterminate.
 */

#include <CLI11.hpp>

#include <cech/cochain.hpp>
#include <cech/io.hpp>
#include <cech/properties.hpp>

#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;

struct SpaceOptions {
    std::string graph_path;
    std::string points_path;
    std::string metric_name = "euclidean";
    double r = -1.0;
    std::string labels_path;
};

void add_space_options(CLI::App* cmd, SpaceOptions& opts, bool with_r = true) {
    auto* graph = cmd->add_option("--graph", opts.graph_path,
                                  "edge-list file: 'u v' per line, optional 'n=K' header");
    auto* points =
        cmd->add_option("--points", opts.points_path, "CSV of coordinates, one point per row");
    graph->excludes(points);
    points->excludes(graph);
    cmd->add_option("--metric", opts.metric_name, "euclidean|chebyshev|manhattan")
        ->default_str("euclidean");
    if (with_r) cmd->add_option("--r", opts.r, "closure scale for metric input (>= 0)");
    cmd->add_option("--labels", opts.labels_path, "label map file: '<index> <label>' per line");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cech::ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

cech::Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return cech::Metric::Euclidean;
    if (name == "chebyshev") return cech::Metric::Chebyshev;
    if (name == "manhattan") return cech::Metric::Manhattan;
    throw cech::ParseError("unknown metric '" + name + "' (euclidean|chebyshev|manhattan)");
}

cech::ClosureSpace load_space(const SpaceOptions& opts) {
    if (!opts.graph_path.empty()) {
        const cech::EdgeList parsed = cech::parse_edge_list(read_file(opts.graph_path));
        return cech::ClosureSpace::from_graph(parsed.n, parsed.edges);
    }
    if (!opts.points_path.empty()) {
        if (opts.r < 0)
            throw cech::ParseError("metric input needs --r >= 0");
        return cech::ClosureSpace::from_metric(cech::parse_points_csv(read_file(opts.points_path)),
                                               parse_metric(opts.metric_name), opts.r);
    }
    throw cech::ParseError("no input: pass --graph FILE or --points FILE");
}

std::vector<std::string> load_labels(const SpaceOptions& opts, std::size_t n) {
    if (opts.labels_path.empty()) {
        std::vector<std::string> labels(n);
        for (std::size_t x = 0; x < n; ++x) labels[x] = std::to_string(x);
        return labels;
    }
    return cech::parse_labels(read_file(opts.labels_path), n);
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cech::ParseError("cannot write '" + path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

void write_json(const cech::Json& j, const std::string& path) { write_text(j.dump(), path); }

/** Parse a constant-group spec: "0", or '+'-separated Z, Z^k, Z/t terms. */
cech::FgAbGroup parse_group_spec(const std::string& text) {
    using cech::Int;
    const std::string spec = text;
    std::vector<std::string> terms;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto plus = spec.find('+', start);
        const std::string raw =
            plus == std::string::npos ? spec.substr(start) : spec.substr(start, plus - start);
        std::string term;
        for (char c : raw)
            if (c != ' ' && c != '\t') term += c;
        terms.push_back(term);
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    if (terms.size() == 1 && terms[0] == "0") return cech::FgAbGroup::zero();
    Eigen::Index rank = 0;
    std::vector<Int> torsion;
    for (const std::string& term : terms) {
        try {
            if (term == "Z") {
                ++rank;
            } else if (term.rfind("Z^", 0) == 0) {
                std::size_t used = 0;
                const long long k = std::stoll(term.substr(2), &used);
                if (used != term.size() - 2 || k < 0) throw std::invalid_argument("");
                rank += static_cast<Eigen::Index>(k);
            } else if (term.rfind("Z/", 0) == 0) {
                std::size_t used = 0;
                const long long t = std::stoll(term.substr(2), &used);
                if (used != term.size() - 2 || t < 2) throw std::invalid_argument("");
                torsion.push_back(Int(t));
            } else {
                throw std::invalid_argument("");
            }
        } catch (const std::exception&) {
            throw cech::ParseError("bad group term '" + term +
                                   "' (expected 0, Z, Z^k, or Z/t with t >= 2)");
        }
    }
    // canonicalize the torsion list into an invariant-factor chain
    const Eigen::Index gens = rank + static_cast<Eigen::Index>(torsion.size());
    cech::IntMatrix rel =
        cech::IntMatrix::Zero(gens, static_cast<Eigen::Index>(torsion.size()));
    for (std::size_t k = 0; k < torsion.size(); ++k)
        rel(rank + static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = torsion[k];
    return cech::presented_group(gens, rel);
}

struct PresheafOptions {
    std::string presheaf_path;
    std::string constant_spec;
};

void add_presheaf_options(CLI::App* cmd, PresheafOptions& opts) {
    auto* file = cmd->add_option("--presheaf", opts.presheaf_path, "presheaf description (JSON)");
    auto* constant = cmd->add_option("--constant", opts.constant_spec,
                                     "constant presheaf with this value (e.g. Z, Z^2, Z/4)");
    file->excludes(constant);
    constant->excludes(file);
}

cech::Presheaf load_presheaf(const PresheafOptions& opts, const cech::Lattice& lat) {
    if (!opts.presheaf_path.empty()) {
        cech::Json parsed;
        try {
            parsed = cech::Json::parse(read_file(opts.presheaf_path));
        } catch (const cech::Json::exception& e) {
            throw cech::ParseError(std::string("presheaf json: ") + e.what());
        }
        return cech::presheaf_from_json(parsed, lat);
    }
    const std::string spec = opts.constant_spec.empty() ? "Z" : opts.constant_spec;
    return cech::constant_presheaf(lat, parse_group_spec(spec));
}

int run(int argc, char** argv) {
    CLI::App app{"Finite closure spaces: interior covers, sheaf checks, Cech cohomology"};
    app.require_subcommand(1);

    // --- cohomology ---
    SpaceOptions coh_space;
    std::string coh_ring = "Z", coh_constant = "Z", coh_output;
    std::size_t coh_qmax = 3;
    auto* coh = app.add_subcommand("cohomology", "Cech cohomology of the canonical cover");
    add_space_options(coh, coh_space);
    coh->add_option("--ring", coh_ring, "coefficient ring: Z, Q or F<p>")->default_str("Z");
    coh->add_option("--constant", coh_constant, "constant coefficient group")->default_str("Z");
    coh->add_option("--qmax", coh_qmax, "top reported degree")->default_str("3");
    coh->add_option("--output", coh_output, "write JSON here instead of stdout");

    // --- scan ---
    SpaceOptions scan_space;
    std::string scan_ring = "Z", scan_output;
    std::size_t scan_qmax = 3, scan_steps = 0;
    double scan_rmin = -1.0, scan_rmax = -1.0;
    std::size_t scan_jobs = 0;
    auto* scan = app.add_subcommand("scan", "cohomology across a range of metric scales");
    scan->add_option("--points", scan_space.points_path, "CSV of coordinates")->required();
    scan->add_option("--metric", scan_space.metric_name, "euclidean|chebyshev|manhattan")
        ->default_str("euclidean");
    scan->add_option("--r-min", scan_rmin, "first scale")->required();
    scan->add_option("--r-max", scan_rmax, "last scale")->required();
    scan->add_option("--steps", scan_steps, "number of scales, linearly spaced")->required();
    scan->add_option("--ring", scan_ring, "coefficient ring")->default_str("Z");
    scan->add_option("--qmax", scan_qmax, "top reported degree")->default_str("3");
    scan->add_option("--jobs", scan_jobs, "worker threads (default: hardware)");
    scan->add_option("--output", scan_output, "write JSON here instead of stdout");

    // --- nerve ---
    SpaceOptions nerve_space;
    std::string nerve_json_path, nerve_dot_path;
    std::size_t nerve_qmax = 3;
    auto* nerve_cmd = app.add_subcommand("nerve", "nerve of the canonical cover");
    add_space_options(nerve_cmd, nerve_space);
    nerve_cmd->add_option("--qmax", nerve_qmax, "top simplex dimension")->default_str("3");
    nerve_cmd->add_option("--json", nerve_json_path, "write JSON here (default stdout)");
    nerve_cmd->add_option("--dot", nerve_dot_path, "also write Graphviz DOT here");

    // --- check-sheaf ---
    SpaceOptions sheaf_space;
    PresheafOptions sheaf_presheaf;
    std::string sheaf_output;
    std::size_t sheaf_lattice_cap = 1024, sheaf_cover_cap = 4096;
    auto* sheaf_cmd = app.add_subcommand("check-sheaf", "presheaf laws and the sheaf condition");
    add_space_options(sheaf_cmd, sheaf_space);
    add_presheaf_options(sheaf_cmd, sheaf_presheaf);
    sheaf_cmd->add_option("--lattice-cap", sheaf_lattice_cap, "max lattice elements")
        ->default_str("1024");
    sheaf_cmd->add_option("--cover-cap", sheaf_cover_cap, "max families per lattice element")
        ->default_str("4096");
    sheaf_cmd->add_option("--output", sheaf_output, "write JSON here instead of stdout");

    // --- check-flabby ---
    SpaceOptions flabby_space;
    PresheafOptions flabby_presheaf;
    std::string flabby_output;
    std::size_t flabby_lattice_cap = 1024;
    auto* flabby_cmd =
        app.add_subcommand("check-flabby", "are all restrictions from the whole space onto?");
    add_space_options(flabby_cmd, flabby_space);
    add_presheaf_options(flabby_cmd, flabby_presheaf);
    flabby_cmd->add_option("--lattice-cap", flabby_lattice_cap, "max lattice elements")
        ->default_str("1024");
    flabby_cmd->add_option("--output", flabby_output, "write JSON here instead of stdout");

    // --- axioms ---
    std::uint64_t axioms_seed = 1;
    std::size_t axioms_cases = 200;
    std::string axioms_output;
    auto* axioms_cmd = app.add_subcommand("axioms", "randomized closure/cover law suites");
    axioms_cmd->add_option("--seed", axioms_seed, "RNG seed")->default_str("1");
    axioms_cmd->add_option("--cases", axioms_cases, "cases per suite")->default_str("200");
    axioms_cmd->add_option("--output", axioms_output, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (coh->parsed()) {
        const cech::ClosureSpace space = load_space(coh_space);
        const cech::CohomologyResult result = cech::cech_cohomology_space(
            space, parse_group_spec(coh_constant), cech::Ring::parse(coh_ring), coh_qmax);
        write_json(cech::report_to_json(result), coh_output);
        return kExitOk;
    }

    if (scan->parsed()) {
        if (scan_rmin < 0 || scan_rmax < scan_rmin)
            throw cech::ParseError("need 0 <= r-min <= r-max");
        if (scan_steps == 0) throw cech::ParseError("need --steps >= 1");
        const Eigen::MatrixXd points = cech::parse_points_csv(read_file(scan_space.points_path));
        const cech::Metric metric = parse_metric(scan_space.metric_name);
        const cech::Ring ring = cech::Ring::parse(scan_ring);
        const cech::FgAbGroup coeffs = cech::FgAbGroup::free(1);

        std::vector<std::pair<double, cech::CohomologyResult>> results(scan_steps);
        std::vector<std::exception_ptr> errors(scan_steps);
        std::atomic<std::size_t> cursor{0};
        const std::size_t hw = scan_jobs ? scan_jobs
                                         : std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
        std::vector<std::thread> workers;
        const std::size_t worker_count = std::min(hw, scan_steps);
        for (std::size_t w = 0; w < worker_count; ++w)
            workers.emplace_back([&] {
                for (std::size_t k = cursor.fetch_add(1); k < scan_steps;
                     k = cursor.fetch_add(1)) {
                    try {
                        const double r =
                            scan_steps == 1
                                ? scan_rmin
                                : scan_rmin + (scan_rmax - scan_rmin) *
                                                  static_cast<double>(k) /
                                                  static_cast<double>(scan_steps - 1);
                        const cech::ClosureSpace space =
                            cech::ClosureSpace::from_metric(points, metric, r);
                        results[k] = {r, cech::cech_cohomology_space(space, coeffs, ring,
                                                                     scan_qmax)};
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                }
            });
        for (auto& w : workers) w.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        write_json(cech::scan_to_json(results), scan_output);
        return kExitOk;
    }

    if (nerve_cmd->parsed()) {
        const cech::ClosureSpace space = load_space(nerve_space);
        const cech::Cover cov = nerve_space.labels_path.empty()
                                    ? cech::canonical_cover(space)
                                    : cech::canonical_cover(
                                          space, load_labels(nerve_space, space.size()));
        const cech::SimplicialComplex complex = cech::nerve(cov, nerve_qmax);
        write_json(cech::nerve_to_json(cov, complex), nerve_json_path);
        if (!nerve_dot_path.empty()) write_text(cech::nerve_to_dot(complex), nerve_dot_path);
        return kExitOk;
    }

    if (sheaf_cmd->parsed()) {
        const cech::ClosureSpace space = load_space(sheaf_space);
        const cech::Lattice lat(space, sheaf_lattice_cap);
        const cech::Presheaf f = load_presheaf(sheaf_presheaf, lat);
        const cech::PresheafReport laws = cech::check_presheaf(lat, f);
        cech::Json out = cech::presheaf_report_to_json(lat, laws);
        if (!laws.ok()) {
            write_json(out, sheaf_output);
            return kExitInput;  // not a presheaf: the sheaf question is ill-posed
        }
        const cech::SheafReport report = cech::check_sheaf(space, lat, f, sheaf_cover_cap);
        const cech::Json sheaf_json = cech::sheaf_report_to_json(lat, report);
        for (const auto& [key, value] : sheaf_json.items()) out[key] = value;
        write_json(out, sheaf_output);
        return report.verdict == cech::SheafVerdict::Indeterminate ? kExitCap : kExitOk;
    }

    if (flabby_cmd->parsed()) {
        const cech::ClosureSpace space = load_space(flabby_space);
        const cech::Lattice lat(space, flabby_lattice_cap);
        const cech::Presheaf f = load_presheaf(flabby_presheaf, lat);
        const cech::PresheafReport laws = cech::check_presheaf(lat, f);
        cech::Json out = cech::presheaf_report_to_json(lat, laws);
        if (!laws.ok()) {
            write_json(out, flabby_output);
            return kExitInput;
        }
        const cech::Json flabby_json = cech::flabby_report_to_json(lat, cech::check_flabby(lat, f));
        for (const auto& [key, value] : flabby_json.items()) out[key] = value;
        write_json(out, flabby_output);
        return kExitOk;
    }

    if (axioms_cmd->parsed()) {
        const cech::PropertyResult closure = cech::check_closure_axioms(axioms_seed, axioms_cases);
        const cech::PropertyResult covers = cech::check_cover_axioms(axioms_seed + 1, axioms_cases);
        auto suite_json = [](const cech::PropertyResult& r) {
            return cech::Json{{"checks", r.checks}, {"failures", r.failures}};
        };
        const cech::Json out{{"seed", axioms_seed},
                             {"cases", axioms_cases},
                             {"closure", suite_json(closure)},
                             {"covers", suite_json(covers)}};
        write_json(out, axioms_output);
        return closure.ok() && covers.ok() ? kExitOk : kExitInput;
    }

    return kExitInput;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cech::CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
