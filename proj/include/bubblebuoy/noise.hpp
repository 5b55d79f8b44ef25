#pragma once

#include <cstdint>
#include <random>

namespace bubblebuoy {

/**
 * Reproducible standard-normal stream.
 *
 * Bits come from std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniforms take the top 53 bits: u = (x >> 11) * 2^-53. Normals
 * use the Marsaglia polar method with both outputs of each accepted pair
 * consumed in order. Only +, *, sqrt and log are involved, so any platform
 * with IEEE-754 doubles and a faithful log reproduces the stream; see
 * docs/prng.md for the exact recipe.
 */
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bubblebuoy
