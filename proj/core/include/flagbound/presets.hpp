#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagbound/sdp.hpp"

namespace flagbound {

/// A named (family, l, types) combination.
struct Preset {
  std::string name;
  std::string family;
  int l = 0;
  std::vector<TypeSpec> specs;
};

/// k4-minus-l4, f-prime-l7, k4-minus-l7; also accepted under their
/// section-2.x / paper-2.x aliases. Throws UnknownName.
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

/// "r s : edges" or "r s : edges @ m"; m defaults to floor((l + s) / 2).
TypeSpec parse_type_spec(std::string_view text, int l);
std::string format_type_spec(const TypeSpec& spec);

}  // namespace flagbound
