#pragma once

#include <string>
#include <string_view>

#include "sphcover/cover.hpp"

namespace sphcover::cli {

enum class View { Equator, North, South };
View parse_view(std::string_view name);

/// Deterministic SVG 1.1. S^1 covers and the equator view of S^2 covers are
/// drawn as one ring per set; north/south views of S^2 covers are orthographic
/// disks rasterized on a 720 x 360 polar membership grid. Throws RegimeMismatch
/// for other dimensions.
std::string render_svg(const Cover& cover, View view);

}  // namespace sphcover::cli
