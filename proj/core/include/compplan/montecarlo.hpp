#pragma once

// Brute-force channel simulation: draws H, applies the zero-forcing receiver
// and evaluates the exact log-det sum-rate together with its two bounds.

#include <cstdint>
#include <span>
#include <vector>

#include "compplan/channel.hpp"
#include "compplan/geometry.hpp"
#include "compplan/linalg.hpp"

namespace compplan {

struct TrialConfig {
    CoopRegion region;
    std::vector<Point2D> user_positions;
    LinkBudget budget;
    long trials = 1000;
    std::uint64_t seed = 1;
    FadingMode fading = FadingMode::rayleigh;

    void validate() const;
};

enum class RateKind { exact, lower, hadamard };

const char* to_string(RateKind kind);

struct RateSample {
    double r_exact = 0.0;     // log2 det(I + g H^H H)
    double r_lower = 0.0;     // log2 det(g H^H H); -inf when H is rank deficient
    double r_hadamard = 0.0;  // sum_u log2(g ||h_u||^2)

    double get(RateKind kind) const;
};

struct EmpiricalEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long count = 0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

// W = (H^H H)^(-1) H^H, solved through the Cholesky factor of the column-
// equilibrated Gram matrix and refined kZfRefineSteps times against H.
// Throws SingularChannel when a pivot of the equilibrated Gram matrix drops
// below kSingularPivot.
inline constexpr double kSingularPivot = 1e-14;
inline constexpr int kZfRefineSteps = 2;
CMatrix zf_filter(const ChannelMatrix& h);

double sum_rate_exact(const ChannelMatrix& h, const LinkBudget& budget);
double sum_rate_lower(const ChannelMatrix& h, const LinkBudget& budget);
double sum_rate_hadamard(const ChannelMatrix& h, const LinkBudget& budget);
RateSample rate_sample(const ChannelMatrix& h, const LinkBudget& budget);

struct RateCampaign {
    std::vector<RateSample> samples;  // indexed by trial
    long redraws = 0;                 // rank-deficient draws replaced
};

// Trial t draws from RngStream(seed, t * kRedrawSlots + attempt), moving to the
// next attempt when the draw is rank deficient.
inline constexpr std::uint64_t kRedrawSlots = 256;
RateCampaign run_rate_campaign(const TrialConfig& cfg, int threads = 1);

EmpiricalEstimate estimate_rcp(std::span<const RateSample> samples, double threshold_T, RateKind which);
EmpiricalEstimate estimate_mean(std::span<const RateSample> samples, RateKind which);

EmpiricalEstimate empirical_rcp(const TrialConfig& cfg, double threshold_T, RateKind which, int threads = 1);
EmpiricalEstimate empirical_ergodic(const TrialConfig& cfg, RateKind which, int threads = 1);

// Samples of ln SNR(u) for one user, built directly as sum_n xi_n z_n from
// fading and shadowing draws (stream ids 0..count-1).
std::vector<double> sample_log_snr(std::span<const double> distances, const LinkBudget& budget, long count,
                                   std::uint64_t seed, int threads = 1);

// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and
// N(mu, sigma^2).
double ks_distance_normal(std::span<const double> samples, double mu, double sigma);

// Fraction of trials in which the Hadamard surrogate does not exceed the exact rate.
double fraction_hadamard_below_exact(std::span<const RateSample> samples);

}  // namespace compplan
