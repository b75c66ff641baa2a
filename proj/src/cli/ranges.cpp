#include "orbitforge/cli.hpp"

#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace orbitforge::cli {

std::vector<Int> parse_grid(std::string_view spec) {
  std::vector<Int> out;
  if (spec.empty()) throw std::invalid_argument("empty grid");
  while (true) {
    auto comma = spec.find(',');
    auto item = spec.substr(0, comma);
    if (auto dots = item.find(".."); dots != std::string_view::npos) {
      Int lo = parse_int(item.substr(0, dots));
      Int hi = parse_int(item.substr(dots + 2));
      if (lo > hi) throw std::invalid_argument("empty range '" + std::string(item) + "'");
      for (Int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_int(item));
    }
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("ORBITFORGE_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace orbitforge::cli
