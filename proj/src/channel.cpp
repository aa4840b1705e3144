#include "agecast/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace agecast {

ChannelParams ChannelParams::validated(double eps1, double eps2,
                                       double eps12) {
  auto fail = [&](const char* why) {
    std::ostringstream os;
    os << "invalid channel (" << eps1 << ", " << eps2 << ", " << eps12
       << "): " << why;
    throw std::invalid_argument(os.str());
  };
  if (!std::isfinite(eps1) || !std::isfinite(eps2) || !std::isfinite(eps12)) {
    fail("parameters must be finite");
  }
  if (eps1 < 0.0 || eps2 < 0.0 || eps12 < 0.0) fail("probabilities are >= 0");
  if (eps1 >= 1.0 || eps2 >= 1.0) {
    fail("eps_i must be < 1 (a user that never receives has unbounded age)");
  }
  if (eps12 > eps1 || eps12 > eps2) {
    fail("eps12 cannot exceed either marginal");
  }
  return ChannelParams(eps1, eps2, eps12);
}

ChannelParams validate_params(double eps1, double eps2, double eps12) {
  return ChannelParams::validated(eps1, eps2, eps12);
}

}  // namespace agecast
