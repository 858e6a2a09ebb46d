// presets.hpp: Named sweep configurations bundled with the tool.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace ssqc {

std::vector<std::string_view> preset_names();

// Config text for `name`, or nullopt if unknown.
std::optional<std::string_view> preset_text(std::string_view name);

} // namespace ssqc
