#include "isopar/isotropic.hpp"

namespace isopar {

std::string to_string(GeneratorMode mode) {
  switch (mode) {
    case GeneratorMode::mu_param:
      return "mu-param";
    case GeneratorMode::cayley:
      return "cayley";
  }
  return "unknown";
}

GeneratorMode parse_generator_mode(const std::string& s) {
  if (s == "mu-param") return GeneratorMode::mu_param;
  if (s == "cayley") return GeneratorMode::cayley;
  throw UsageError("unknown generator mode '" + s + "' (expected mu-param or cayley)");
}

}  // namespace isopar
