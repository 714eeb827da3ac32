#pragma once

#include <string_view>

namespace dhp::detail {

std::string_view embedded_curve_database();
std::string_view embedded_toy_curves();

}  // namespace dhp::detail
