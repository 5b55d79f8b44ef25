#include "bubblebuoy/noise.hpp"

#include <cmath>

namespace bubblebuoy {

double NormalStream::uniform() {
    constexpr double kTwoPow53 = 9007199254740992.0;
    return static_cast<double>(engine_() >> 11) / kTwoPow53;
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

}  // namespace bubblebuoy
