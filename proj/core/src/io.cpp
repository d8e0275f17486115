#include "frechet/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace frechet {

using nlohmann::json;

CurveFormat format_from_path(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        for (auto& c : ext) c = static_cast<char>(std::tolower(c));
        if (ext == "json") return CurveFormat::kJson;
    }
    return CurveFormat::kCsv;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::domain_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Curve parse_csv(const std::string& text) {
    std::vector<double> flat;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        // Trim; skip blanks and comment lines.
        std::string t = line;
        while (!t.empty() && (t.back() == '\r' || t.back() == ' ' || t.back() == '\t')) {
            t.pop_back();
        }
        std::size_t start = t.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        t = t.substr(start);
        if (t[0] == '#') continue;

        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= t.size()) {
            std::size_t comma = t.find(',', pos);
            std::string field =
                comma == std::string::npos ? t.substr(pos) : t.substr(pos, comma - pos);
            try {
                std::size_t used = 0;
                const double v = std::stod(field, &used);
                while (used < field.size() &&
                       (field[used] == ' ' || field[used] == '\t')) {
                    ++used;
                }
                if (used != field.size()) throw std::invalid_argument("trailing junk");
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": cannot parse coordinate '" + field + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (dim == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " coordinates, got " +
                             std::to_string(row.size()));
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (flat.empty()) throw std::domain_error("curve file holds no vertices");
    return Curve(dim, std::move(flat));
}

Curve parse_json_curve(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dimension") || !j.contains("vertices")) {
        throw ParseError("curve JSON needs \"dimension\" and \"vertices\"");
    }
    const std::size_t dim = j["dimension"].get<std::size_t>();
    if (!j["vertices"].is_array()) throw ParseError("\"vertices\" must be an array");
    std::vector<double> flat;
    std::size_t row_no = 0;
    for (const auto& row : j["vertices"]) {
        ++row_no;
        if (!row.is_array() || row.size() != dim) {
            throw ParseError("vertex " + std::to_string(row_no) + ": expected " +
                             std::to_string(dim) + " coordinates");
        }
        for (const auto& v : row) {
            if (!v.is_number()) {
                throw ParseError("vertex " + std::to_string(row_no) +
                                 ": coordinates must be numbers");
            }
            flat.push_back(v.get<double>());
        }
    }
    if (flat.empty()) throw std::domain_error("curve file holds no vertices");
    return Curve(dim, std::move(flat));
}

json position_json(CurvePosition pos) {
    return json{{"edge", pos.edge_index}, {"fraction", pos.fraction}};
}

}  // namespace

Curve parse_curve_text(const std::string& text, CurveFormat format) {
    return format == CurveFormat::kCsv ? parse_csv(text) : parse_json_curve(text);
}

Curve parse_curve_file(const std::string& path, CurveFormat format) {
    return parse_curve_text(read_file(path), format);
}

std::string serialize_curve(const Curve& c, CurveFormat format) {
    if (format == CurveFormat::kCsv) {
        std::ostringstream out;
        out.precision(17);
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto v = c.vertex(i);
            for (std::size_t k = 0; k < c.dim(); ++k) {
                if (k) out << ',';
                out << v[k];
            }
            out << '\n';
        }
        return out.str();
    }
    json j;
    j["dimension"] = c.dim();
    json verts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto v = c.vertex(i);
        verts.push_back(std::vector<double>(v.begin(), v.end()));
    }
    j["vertices"] = std::move(verts);
    return j.dump(2) + "\n";
}

void write_curve_file(const Curve& c, const std::string& path, CurveFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::domain_error("cannot write file: " + path);
    out << serialize_curve(c, format);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string RunReport::digest() const {
    return fnv1a_hex(command + "\n" + inputs_json + "\n" + outcome_json + "\n" +
                     std::to_string(probe_count));
}

std::string RunReport::to_json(bool pretty) const {
    json j;
    j["command"] = command;
    j["inputs"] = json::parse(inputs_json.empty() ? "{}" : inputs_json);
    j["outcome"] = json::parse(outcome_json.empty() ? "{}" : outcome_json);
    j["probe_count"] = probe_count;
    j["digest"] = digest();
    j["wall_time_ms"] = wall_time_ms;
    return pretty ? j.dump(2) + "\n" : j.dump();
}

std::string alignment_to_json(const Curve& P, const Curve& Q, const Alignment& a) {
    json pairs = json::array();
    for (const auto& pair : a) {
        pairs.push_back(json{{"p", position_json(pair.on_p)},
                             {"q", position_json(pair.on_q)},
                             {"dist", pair.dist}});
    }
    json j;
    j["leash"] = alignment_leash(P, Q, a);
    j["pairs"] = std::move(pairs);
    return j.dump(2) + "\n";
}

std::string free_space_to_json(const FreeSpaceDiagram& d) {
    json cells = json::array();
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t j = 0; j < d.cols; ++j) {
            const FreeSpaceCell& c = d.cell(i, j);
            json jc;
            jc["i"] = i;
            jc["j"] = j;
            if (!c.left_empty()) jc["left"] = {c.left_lo, c.left_hi};
            if (!c.bottom_empty()) jc["bottom"] = {c.bottom_lo, c.bottom_hi};
            cells.push_back(std::move(jc));
        }
    }
    json j;
    j["rows"] = d.rows;
    j["cols"] = d.cols;
    j["radius"] = d.radius;
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

}  // namespace frechet
