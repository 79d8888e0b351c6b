#include "rdperm/distribution.hpp"

#include <iomanip>

namespace rdperm {

void write_distribution(std::ostream& out, const ApproxDistribution& d) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const auto& [sigma, mass] : d.support()) out << sigma.to_string() << ' ' << mass << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace rdperm
