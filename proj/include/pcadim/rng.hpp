#pragma once

#include <cstdint>
#include <random>

namespace pcadim {

// Deterministic random stream addressed by (seed, stream_id). Equal keys
// reproduce the identical sequence; distinct stream_ids give statistically
// independent streams, so parallel consumers never share state.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    // Uniform on [0, 1).
    double uniform();

    // Standard normal via Box-Muller (explicit, so sequences are not at the
    // mercy of implementation-defined stdlib distributions).
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool have_cached_ = false;
};

// Stable 64-bit mixer for deriving stream ids from replication coordinates.
std::uint64_t mix_stream_id(std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace pcadim
