#pragma once

#include <filesystem>
#include <string>

#include "tlra/factorization.hpp"

namespace tlra {

struct SvgOptions {
    std::string title;
    int width = 840;
    int height = 620;
};

/// Self-contained SVG scatter of a principal map: rows as filled circles,
/// columns as open triangles, zero lines dashed. Output is deterministic.
std::string principal_map_svg(const PrincipalMap& map, const SvgOptions& options = {});

void write_principal_map_svg(const std::filesystem::path& path, const PrincipalMap& map,
                             const SvgOptions& options = {});

}  // namespace tlra
