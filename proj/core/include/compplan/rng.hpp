#pragma once

// Counter-based random streams. A stream is identified by (seed, stream_id);
// draw k of a stream is a pure function of (seed, stream_id, k), so work can be
// split across threads in any order without changing results.

#include <array>
#include <complex>
#include <cstdint>

namespace compplan {

// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as easy
// as 1, 2, 3").
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // Uniform in the open interval (0, 1).
    double uniform();
    // Standard normal via Box-Muller; values come in pairs.
    double normal();
    // Circularly-symmetric CN(0, 1): real and imaginary parts each N(0, 1/2).
    std::complex<double> complex_normal();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace compplan
