#include "flagproj/polytope_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flagproj {

using nlohmann::json;

Polytope polytope_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("vertices"))
        throw std::runtime_error("polytope JSON needs \"dim\" and \"vertices\"");
    const int d = doc.at("dim").get<int>();
    std::vector<Eigen::VectorXd> vertices;
    for (const auto& row : doc.at("vertices")) {
        if (static_cast<int>(row.size()) != d)
            throw std::runtime_error("vertex length does not match \"dim\"");
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v(i) = row.at(static_cast<size_t>(i)).get<double>();
        vertices.push_back(std::move(v));
    }
    return Polytope::build(std::move(vertices));
}

std::string polytope_to_json(const Polytope& p) {
    json doc;
    doc["dim"] = p.dim();
    json verts = json::array();
    for (const auto& v : p.vertices()) {
        json row = json::array();
        for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
        verts.push_back(std::move(row));
    }
    doc["vertices"] = std::move(verts);

    json face_counts = json::array();
    for (int k = 0; k < p.dim(); ++k) face_counts.push_back(p.faces(k).size());
    doc["derived"] = {
        {"volume", p.volume()},
        {"diameter", p.diameter()},
        {"face_counts", std::move(face_counts)},
    };
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

Polytope load_polytope(const std::string& path) { return polytope_from_json(read_text_file(path)); }

void save_polytope(const Polytope& p, const std::string& path) {
    write_text_file(path, polytope_to_json(p));
}

}  // namespace flagproj
