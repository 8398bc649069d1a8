#include "adapt/error.hpp"

namespace adapt {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::validation: return "validation";
    case Errc::schema: return "schema";
    case Errc::config: return "config";
    case Errc::overflow: return "overflow";
    case Errc::binding: return "binding";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::not_found: return "not_found";
    case Errc::conflict: return "conflict";
    case Errc::forbidden: return "forbidden";
    case Errc::integrity: return "integrity";
    case Errc::store: return "store";
    case Errc::network: return "network";
    case Errc::unfit: return "unfit";
  }
  return "unknown";
}

Errc errc_from_string(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Errc::unfit); ++i) {
    auto code = static_cast<Errc>(i);
    if (to_string(code) == name) return code;
  }
  return Errc::network;
}

}  // namespace adapt
