#include "ivckind/numeric.hpp"

#include <sstream>

namespace ivck {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

}  // namespace ivck
