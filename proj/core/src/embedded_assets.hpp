#pragma once

#include <map>
#include <string>
#include <string_view>

namespace aimforge::detail {

const std::map<std::string, std::string, std::less<>>& embedded_templates();
std::string_view embedded_symbol_table();

}  // namespace aimforge::detail
