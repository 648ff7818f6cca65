/**
 * Text and JSON input/output: edge lists, point CSVs, label maps, presheaf
 * descriptions, and the JSON reports the command-line tool emits.
 *
 * All emitters use nlohmann's ordered_json and fixed orderings (lattice ids,
 * ascending degrees, lexicographic tuples), so serialized output is
 * byte-deterministic for identical inputs.
 */

#pragma once

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "cochain.hpp"
#include "cover.hpp"
#include "lattice.hpp"
#include "nerve.hpp"
#include "presheaf.hpp"

namespace cech {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string strip(const std::string& line) {
    const auto begin = line.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = line.find_last_not_of(" \t\r\n");
    return line.substr(begin, end - begin + 1);
}

inline std::int64_t to_int64(const Int& v, const std::string& what) {
    if (v > Int(std::numeric_limits<std::int64_t>::max()) ||
        v < Int(std::numeric_limits<std::int64_t>::min()))
        throw std::range_error(what + " exceeds 64-bit range: " + v.str());
    return v.convert_to<std::int64_t>();
}

}  // namespace detail

struct EdgeList {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/**
 * Edge-list format: one "u v" pair per line, '#' starts a comment, blank
 * lines are ignored.  An optional first data line "n=K" fixes the number of
 * points; otherwise n = 1 + largest index seen.  An empty list without a
 * header is an error (the space size would be undefined).
 */
inline EdgeList parse_edge_list(const std::string& text) {
    EdgeList out;
    std::optional<std::size_t> header;
    std::size_t max_index = 0;
    bool any_vertex = false, first_data_line = true;
    std::istringstream in(text);
    std::string raw;
    for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::strip(line);
        if (line.empty()) continue;
        if (first_data_line && line.rfind("n=", 0) == 0) {
            first_data_line = false;
            try {
                std::size_t used = 0;
                header = std::stoull(line.substr(2), &used);
                if (used != line.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": malformed header '" + line +
                                 "'");
            }
            continue;
        }
        first_data_line = false;
        std::istringstream fields(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0)
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected two non-negative vertex indices, got '" + line + "'");
        out.edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
        max_index = std::max({max_index, static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
        any_vertex = true;
    }
    if (header) {
        out.n = *header;
        if (any_vertex && max_index >= out.n)
            throw ParseError("vertex index " + std::to_string(max_index) +
                             " out of range for declared n=" + std::to_string(out.n));
    } else if (any_vertex) {
        out.n = max_index + 1;
    } else {
        throw ParseError("empty edge list and no 'n=K' header: space size undefined");
    }
    return out;
}

/**
 * Comma-separated coordinates, one point per row.  Every row must have the
 * same number of fields; fields must parse completely as finite doubles.
 */
inline Eigen::MatrixXd parse_points_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string raw;
    std::size_t width = 0;
    for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::strip(line);
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const std::string field =
                detail::strip(comma == std::string::npos ? line.substr(start)
                                                         : line.substr(start, comma - start));
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(field, &used);
            } catch (const std::exception&) {
                used = std::string::npos;  // flag as bad
            }
            if (field.empty() || used != field.size())
                throw ParseError("line " + std::to_string(lineno) + ": bad coordinate '" + field +
                                 "'");
            if (!std::isfinite(value))
                throw ParseError("line " + std::to_string(lineno) +
                                 ": coordinates must be finite, got '" + field + "'");
            row.push_back(value);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (rows.empty()) width = row.size();
        else if (row.size() != width)
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(width) + " coordinates, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return out;
}

/**
 * Label map: lines of "<index> <label...>"; the label is the rest of the
 * line.  Unlisted indices default to their decimal form.
 */
inline std::vector<std::string> parse_labels(const std::string& text, std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x) labels[x] = std::to_string(x);
    std::istringstream in(text);
    std::string raw;
    for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::strip(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        long long index = -1;
        if (!(fields >> index) || index < 0)
            throw ParseError("line " + std::to_string(lineno) + ": expected '<index> <label>'");
        if (static_cast<std::size_t>(index) >= n)
            throw ParseError("line " + std::to_string(lineno) + ": index " +
                             std::to_string(index) + " out of range (n=" + std::to_string(n) + ")");
        std::string label;
        std::getline(fields, label);
        label = detail::strip(label);
        if (label.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty label");
        labels[static_cast<std::size_t>(index)] = label;
    }
    return labels;
}

// ---------------------------------------------------------------------------
// Cohomology reports
// ---------------------------------------------------------------------------

inline Json report_to_json(const CohomologyResult& result) {
    Json degrees = Json::array();
    for (const DegreeCohomology& d : result.degrees) {
        Json torsion = Json::array();
        for (const Int& t : d.torsion)
            torsion.push_back(detail::to_int64(t, "torsion coefficient"));
        degrees.push_back(Json{{"q", d.q}, {"betti", d.betti}, {"torsion", std::move(torsion)}});
    }
    return Json{{"ring", result.ring.to_string()},
                {"degrees", std::move(degrees)},
                {"cover", result.cover_name},
                {"sheaf_valid_upto", result.sheaf_valid_upto}};
}

inline Json scan_to_json(const std::vector<std::pair<double, CohomologyResult>>& results) {
    Json out = Json::array();
    for (const auto& [r, res] : results) {
        Json entry = Json{{"r", r}};
        const Json report = report_to_json(res);
        for (const auto& [key, value] : report.items()) entry[key] = value;
        out.push_back(std::move(entry));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nerve output
// ---------------------------------------------------------------------------

inline Json nerve_to_json(const Cover& cov, const SimplicialComplex& complex) {
    Json vertices = Json::array();
    for (std::size_t k = 0; k < complex.vertex_count; ++k)
        vertices.push_back(Json{{"id", k},
                                {"label", complex.labels[k]},
                                {"points", cov.elements[k].bits()}});
    Json faces = Json::array();
    for (const auto& dim : complex.faces) {
        Json level = Json::array();
        for (const auto& tuple : dim) level.push_back(tuple);
        faces.push_back(std::move(level));
    }
    return Json{{"vertex_count", complex.vertex_count},
                {"vertices", std::move(vertices)},
                {"faces", std::move(faces)}};
}

/** Inverse of nerve_to_json; the cover elements are returned alongside. */
inline std::pair<SimplicialComplex, std::vector<PointSet>> nerve_from_json(const Json& j) {
    SimplicialComplex out;
    std::vector<PointSet> elements;
    try {
        out.vertex_count = j.at("vertex_count").get<std::size_t>();
        for (const Json& v : j.at("vertices")) {
            out.labels.push_back(v.at("label").get<std::string>());
            elements.push_back(PointSet::from_bits(v.at("points").get<std::string>()));
        }
        for (const Json& level : j.at("faces")) {
            out.faces.emplace_back();
            for (const Json& tuple : level)
                out.faces.back().push_back(tuple.get<std::vector<std::size_t>>());
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("nerve json: ") + e.what());
    }
    if (out.labels.size() != out.vertex_count)
        throw ParseError("nerve json: vertex list does not match vertex_count");
    return {std::move(out), std::move(elements)};
}

/** 1-skeleton as Graphviz 'graph', vertices labelled, deterministic order. */
inline std::string nerve_to_dot(const SimplicialComplex& complex) {
    std::ostringstream out;
    out << "graph nerve {\n";
    for (std::size_t k = 0; k < complex.vertex_count; ++k) {
        const bool present =
            !complex.faces.empty() &&
            std::any_of(complex.faces[0].begin(), complex.faces[0].end(),
                        [&](const std::vector<std::size_t>& t) { return t[0] == k; });
        if (present) out << "  v" << k << " [label=\"" << complex.labels[k] << "\"];\n";
    }
    if (complex.faces.size() > 1)
        for (const auto& edge : complex.faces[1])
            out << "  v" << edge[0] << " -- v" << edge[1] << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Presheaf serialization
// ---------------------------------------------------------------------------

inline Json group_to_json(const FgAbGroup& g) {
    Json torsion = Json::array();
    for (const Int& t : g.torsion) torsion.push_back(detail::to_int64(t, "torsion coefficient"));
    return Json{{"free_rank", g.free_rank}, {"torsion", std::move(torsion)}};
}

inline FgAbGroup group_from_json(const Json& j) {
    std::vector<Int> torsion;
    for (const Json& t : j.at("torsion")) torsion.push_back(Int(t.get<std::int64_t>()));
    return FgAbGroup(j.at("free_rank").get<Eigen::Index>(), std::move(torsion));
}

/**
 * Presheaf on a lattice as JSON: lattice elements by bit-string (in id
 * order), one value per element, and one restriction entry per comparable
 * pair, the matrix row-major with gens(to) rows and gens(from) columns.
 */
inline Json presheaf_to_json(const Lattice& lat, const Presheaf& f) {
    Json elements = Json::array();
    for (std::size_t id = 0; id < lat.size(); ++id) elements.push_back(lat.element(id).bits());
    Json values = Json::array();
    for (std::size_t id = 0; id < lat.size(); ++id) values.push_back(group_to_json(f.value(id)));
    Json restrictions = Json::array();
    for (std::size_t u = 0; u < lat.size(); ++u)
        for (std::size_t v = 0; v < lat.size(); ++v) {
            if (u == v || !lat.element(v).is_subset_of(lat.element(u))) continue;
            const IntMatrix rho = f.restriction(u, v);
            Json matrix = Json::array();
            for (Eigen::Index i = 0; i < rho.rows(); ++i) {
                Json row = Json::array();
                for (Eigen::Index j = 0; j < rho.cols(); ++j)
                    row.push_back(detail::to_int64(rho(i, j), "restriction entry"));
                matrix.push_back(std::move(row));
            }
            restrictions.push_back(Json{{"from", u}, {"to", v}, {"matrix", std::move(matrix)}});
        }
    return Json{{"elements", std::move(elements)},
                {"values", std::move(values)},
                {"restrictions", std::move(restrictions)}};
}

/**
 * Parse a presheaf description and bind it to the given lattice.  The
 * element list must name exactly the lattice elements (any order); every
 * listed restriction must connect comparable elements with a matrix of the
 * declared shape.  Functor laws are *not* checked here — run check_presheaf.
 */
inline Presheaf presheaf_from_json(const Json& j, const Lattice& lat) {
    std::vector<std::size_t> id_of_entry;
    try {
        const auto& elements = j.at("elements");
        const auto& values = j.at("values");
        if (elements.size() != lat.size())
            throw ParseError("presheaf json: " + std::to_string(elements.size()) +
                             " elements for a lattice with " + std::to_string(lat.size()));
        if (values.size() != elements.size())
            throw ParseError("presheaf json: value count does not match element count");
        std::vector<bool> hit(lat.size(), false);
        for (const Json& e : elements) {
            const PointSet s = PointSet::from_bits(e.get<std::string>());
            const auto id = lat.find(s);
            if (!id)
                throw ParseError("presheaf json: '" + e.get<std::string>() +
                                 "' is not a lattice element");
            if (hit[*id])
                throw ParseError("presheaf json: duplicate element '" + e.get<std::string>() + "'");
            hit[*id] = true;
            id_of_entry.push_back(*id);
        }
        Presheaf f;
        f.values.resize(lat.size());
        for (std::size_t k = 0; k < id_of_entry.size(); ++k)
            f.values[id_of_entry[k]] = group_from_json(values[k]);
        for (const Json& r : j.at("restrictions")) {
            const std::size_t from_entry = r.at("from").get<std::size_t>();
            const std::size_t to_entry = r.at("to").get<std::size_t>();
            if (from_entry >= id_of_entry.size() || to_entry >= id_of_entry.size())
                throw ParseError("presheaf json: restriction references element " +
                                 std::to_string(std::max(from_entry, to_entry)) +
                                 " beyond the element list");
            const std::size_t from = id_of_entry[from_entry], to = id_of_entry[to_entry];
            if (!lat.element(to).is_subset_of(lat.element(from)))
                throw ParseError("presheaf json: restriction (" + std::to_string(from_entry) +
                                 " -> " + std::to_string(to_entry) +
                                 ") does not go downward in the lattice");
            const auto& rows = r.at("matrix");
            const Eigen::Index want_rows = f.values[to].generator_count();
            const Eigen::Index want_cols = f.values[from].generator_count();
            if (static_cast<Eigen::Index>(rows.size()) != want_rows)
                throw ParseError("presheaf json: matrix for (" + std::to_string(from_entry) +
                                 " -> " + std::to_string(to_entry) + ") has " +
                                 std::to_string(rows.size()) + " rows, expected " +
                                 std::to_string(want_rows));
            IntMatrix m(want_rows, want_cols);
            for (Eigen::Index i = 0; i < want_rows; ++i) {
                const auto& row = rows[static_cast<std::size_t>(i)];
                if (static_cast<Eigen::Index>(row.size()) != want_cols)
                    throw ParseError("presheaf json: ragged matrix for (" +
                                     std::to_string(from_entry) + " -> " +
                                     std::to_string(to_entry) + ")");
                for (Eigen::Index jj = 0; jj < want_cols; ++jj)
                    m(i, jj) = Int(row[static_cast<std::size_t>(jj)].get<std::int64_t>());
            }
            f.set_restriction(from, to, std::move(m));
        }
        return f;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("presheaf json: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Sheaf / flabby / stalk reports
// ---------------------------------------------------------------------------

inline Json sheaf_report_to_json(const Lattice& lat, const SheafReport& report) {
    const char* verdict = report.verdict == SheafVerdict::Sheaf           ? "sheaf"
                          : report.verdict == SheafVerdict::NotSheaf      ? "not-sheaf"
                                                                          : "indeterminate";
    Json violations = Json::array();
    for (const SheafViolation& v : report.violations) {
        Json family = Json::array();
        for (std::size_t id : v.family) family.push_back(lat.element(id).bits());
        violations.push_back(Json{{"element", lat.element(v.element).bits()},
                                  {"condition", v.condition},
                                  {"cover", std::move(family)}});
    }
    Json unchecked = Json::array();
    for (std::size_t id : report.unchecked) unchecked.push_back(lat.element(id).bits());
    return Json{{"verdict", verdict},
                {"violations", std::move(violations)},
                {"unchecked", std::move(unchecked)},
                {"families_checked", report.families_checked}};
}

inline Json flabby_report_to_json(const Lattice& lat, const FlabbyReport& report) {
    Json failing = Json::array();
    for (std::size_t id : report.failing) failing.push_back(lat.element(id).bits());
    return Json{{"flabby", report.ok()}, {"failing", std::move(failing)}};
}

inline Json presheaf_report_to_json(const Lattice& lat, const PresheafReport& report) {
    Json violations = Json::array();
    for (const PresheafViolation& v : report.violations) {
        Json chain = Json::array();
        for (std::size_t id : v.chain)
            chain.push_back(id < lat.size() ? Json(lat.element(id).bits()) : Json(nullptr));
        const char* kind = nullptr;
        switch (v.kind) {
            case PresheafViolation::Kind::BadValue: kind = "bad-value"; break;
            case PresheafViolation::Kind::MissingRestriction: kind = "missing-restriction"; break;
            case PresheafViolation::Kind::BadShape: kind = "bad-shape"; break;
            case PresheafViolation::Kind::IllDefined: kind = "ill-defined"; break;
            case PresheafViolation::Kind::Identity: kind = "identity"; break;
            case PresheafViolation::Kind::Composition: kind = "composition"; break;
        }
        violations.push_back(
            Json{{"kind", kind}, {"chain", std::move(chain)}, {"detail", v.description}});
    }
    return Json{{"presheaf_ok", report.ok()}, {"violations", std::move(violations)}};
}

}  // namespace cech
