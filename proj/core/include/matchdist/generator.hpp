#pragma once

#include <cstdint>
#include <limits>

#include "matchdist/complex.hpp"

namespace matchdist {

/// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter hashed by a fixed
/// finalizer. Portable and fully specified, so seeded output never changes.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound] without modulo bias.
    std::uint64_t below_or_equal(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct GenSpec {
    std::uint32_t n_vertices = 10;
    std::uint32_t n_maximal = 10;
    std::uint32_t max_dim = 1;
    std::uint64_t seed = 0;
    std::uint32_t coord_range = 1000;

    /// Throws InfeasibleSpec.
    void validate() const;
};

/// Random 1-critical bi-filtration: n_maximal distinct max_dim-simplices on
/// n_vertices vertices with uniform integer coordinates in [0, coord_range];
/// every face then gets a uniform integer point below all of its cofaces.
/// Vertices that lie in no sampled simplex are not emitted.
/// Throws InfeasibleSpec when distinct simplices cannot be found.
BiFiltration generate_random(const GenSpec& spec);

}  // namespace matchdist
