#pragma once

#include <string>

#include "flagproj/polytope.hpp"

namespace flagproj {

/// Polytope JSON: {"dim": d, "vertices": [[...], ...]} plus an informational
/// "derived" block (volume, diameter, face counts) that readers ignore.
/// Parsing rebuilds the polytope from the vertices, so every loaded polytope
/// passes the same structural validation as a freshly constructed one.
Polytope polytope_from_json(const std::string& text);
std::string polytope_to_json(const Polytope& p);

Polytope load_polytope(const std::string& path);
void save_polytope(const Polytope& p, const std::string& path);

/// Whole-file helpers shared by the CLI.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace flagproj
