#include "flagbound/presets.hpp"

#include <charconv>

#include "flagbound/error.hpp"
#include "flagbound/io.hpp"

namespace flagbound {

namespace {

TypeSpec spec(int s, std::string_view edges, int m) {
  return TypeSpec{TypeSigma(Hypergraph::from_compact(3, s, edges)), m};
}

}  // namespace

std::vector<std::string> preset_names() { return {"k4-minus-l4", "f-prime-l7", "k4-minus-l7"}; }

Preset preset(std::string_view name) {
  if (name == "k4-minus-l4" || name == "section-2.2" || name == "paper-2.2")
    return {"k4-minus-l4", "K4-minus", 4, {spec(2, "", 3)}};
  if (name == "f-prime-l7" || name == "section-2.3" || name == "paper-2.3")
    return {"f-prime-l7",
            "F-prime",
            7,
            {spec(1, "", 4), spec(3, "", 5), spec(3, "123", 5), spec(5, "123 124 135", 6),
             spec(5, "123 124 345", 6), spec(5, "123 124 135 245", 6)}};
  if (name == "k4-minus-l7" || name == "section-2.4" || name == "paper-2.4")
    return {"k4-minus-l7",
            "K4-minus",
            7,
            {spec(3, "", 5), spec(3, "123", 5), spec(4, "123", 5), spec(5, "123 124 125", 6)}};
  throw Error(ErrorKind::UnknownName, "no preset '" + std::string(name) + "'");
}

TypeSpec parse_type_spec(std::string_view text, int l) {
  auto at = text.find('@');
  Hypergraph g = parse_inline(at == std::string_view::npos ? text : text.substr(0, at));
  int m = (l + g.order()) / 2;
  if (at != std::string_view::npos) {
    auto rest = trim(text.substr(at + 1));
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
    if (ec != std::errc() || p != rest.data() + rest.size())
      throw Error(ErrorKind::Parse, "bad flag order in type spec '" + std::string(text) + "'");
  }
  return TypeSpec{TypeSigma(std::move(g)), m};
}

std::string format_type_spec(const TypeSpec& spec) {
  return format_inline(spec.sigma.graph()) + " @ " + std::to_string(spec.m);
}

}  // namespace flagbound
