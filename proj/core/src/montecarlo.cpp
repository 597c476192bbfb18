#include "compplan/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "compplan/error.hpp"
#include "compplan/parallel.hpp"

namespace compplan {

namespace {

constexpr double kLog2e = std::numbers::log2e;

struct Equilibrated {
    CMatrix gram;                // unit-diagonal Gram matrix of normalized columns
    std::vector<double> energy;  // ||h_u||^2
};

Equilibrated equilibrated_gram(const CMatrix& h) {
    Equilibrated out{gram(h), {}};
    const std::size_t u = out.gram.rows();
    out.energy.resize(u);
    std::vector<double> inv(u);
    for (std::size_t i = 0; i < u; ++i) {
        out.energy[i] = out.gram(i, i).real();
        inv[i] = out.energy[i] > 0.0 ? 1.0 / std::sqrt(out.energy[i]) : 0.0;
    }
    for (std::size_t i = 0; i < u; ++i) {
        for (std::size_t j = 0; j < u; ++j) out.gram(i, j) *= inv[i] * inv[j];
    }
    return out;
}

std::optional<CMatrix> equilibrated_cholesky(const Equilibrated& e) {
    for (double en : e.energy) {
        if (!(en > 0.0)) return std::nullopt;
    }
    return cholesky(e.gram, kSingularPivot);
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

EmpiricalEstimate finish(double mean, double std_error, long count, double lo_clamp, double hi_clamp) {
    EmpiricalEstimate e;
    e.mean = mean;
    e.std_error = std_error;
    e.count = count;
    e.ci_lo = std::clamp(mean - 1.96 * std_error, lo_clamp, mean);
    e.ci_hi = std::clamp(mean + 1.96 * std_error, mean, hi_clamp);
    return e;
}

}  // namespace

void TrialConfig::validate() const {
    budget.validate();
    if (trials < 1) throw DomainError("trial count must be at least 1");
    require_zf_feasible(static_cast<int>(user_positions.size()), region.order, budget.antennas_per_bs);
}

const char* to_string(RateKind kind) {
    switch (kind) {
        case RateKind::exact: return "exact";
        case RateKind::lower: return "lower";
        case RateKind::hadamard: return "hadamard";
    }
    return "?";
}

double RateSample::get(RateKind kind) const {
    switch (kind) {
        case RateKind::exact: return r_exact;
        case RateKind::lower: return r_lower;
        case RateKind::hadamard: return r_hadamard;
    }
    return r_exact;
}

CMatrix zf_filter(const ChannelMatrix& h) {
    const Equilibrated e = equilibrated_gram(h.entries);
    const std::optional<CMatrix> l = equilibrated_cholesky(e);
    if (!l) throw SingularChannel("channel matrix is rank deficient; zero forcing undefined");

    // W = S Gs^(-1) (H S)^H with S = diag(1 / ||h_u||).
    const std::size_t users = h.entries.cols();
    CMatrix hs_adj = adjoint(h.entries);
    for (std::size_t u = 0; u < users; ++u) {
        const double inv = 1.0 / std::sqrt(e.energy[u]);
        for (std::size_t c = 0; c < hs_adj.cols(); ++c) hs_adj(u, c) *= inv;
    }
    CMatrix w = cholesky_solve(*l, hs_adj);
    for (std::size_t u = 0; u < users; ++u) {
        const double inv = 1.0 / std::sqrt(e.energy[u]);
        for (std::size_t c = 0; c < w.cols(); ++c) w(u, c) *= inv;
    }
    // The normal equations square cond(H); refining with W <- W + (I - W H) W
    // squares the residual each step and keeps W in the row space of H^H.
    const CMatrix eye = CMatrix::identity(users);
    for (int step = 0; step < kZfRefineSteps; ++step) {
        const CMatrix residual = eye - w * h.entries;
        w = w + residual * w;
    }
    return w;
}

double sum_rate_exact(const ChannelMatrix& h, const LinkBudget& budget) {
    const std::size_t users = h.entries.cols();
    CMatrix a = scaled(gram(h.entries), budget.power_ratio());
    for (std::size_t i = 0; i < users; ++i) a(i, i) += 1.0;
    const std::optional<CMatrix> l = cholesky(a);
    if (!l) throw SingularChannel("I + g H^H H failed to factor; channel has non-finite entries");
    return log_det_from_cholesky(*l) * kLog2e;
}

double sum_rate_hadamard(const ChannelMatrix& h, const LinkBudget& budget) {
    const double g = budget.power_ratio();
    double acc = 0.0;
    for (std::size_t u = 0; u < h.entries.cols(); ++u) {
        double energy = 0.0;
        for (std::size_t r = 0; r < h.entries.rows(); ++r) energy += std::norm(h.entries(r, u));
        acc += std::log2(g * energy);
    }
    return acc;
}

double sum_rate_lower(const ChannelMatrix& h, const LinkBudget& budget) {
    const Equilibrated e = equilibrated_gram(h.entries);
    const std::optional<CMatrix> l = equilibrated_cholesky(e);
    if (!l) return -std::numeric_limits<double>::infinity();
    // det(g H^H H) = prod_u (g ||h_u||^2) * det(Gs).
    return sum_rate_hadamard(h, budget) + log_det_from_cholesky(*l) * kLog2e;
}

RateSample rate_sample(const ChannelMatrix& h, const LinkBudget& budget) {
    return {sum_rate_exact(h, budget), sum_rate_lower(h, budget), sum_rate_hadamard(h, budget)};
}

RateCampaign run_rate_campaign(const TrialConfig& cfg, int threads) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.trials);
    RateCampaign out;
    out.samples.resize(n);
    std::vector<std::uint16_t> attempts(n, 0);

    parallel_for(n, threads, [&](std::size_t t) {
        for (std::uint64_t attempt = 0; attempt < kRedrawSlots; ++attempt) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(t) * kRedrawSlots + attempt);
            const ChannelMatrix h = sample_channel(cfg.region, cfg.user_positions, cfg.budget, rng, cfg.fading);
            const RateSample s = rate_sample(h, cfg.budget);
            if (std::isfinite(s.r_lower)) {
                out.samples[t] = s;
                attempts[t] = static_cast<std::uint16_t>(attempt);
                return;
            }
        }
        throw SingularChannel("trial " + std::to_string(t) + " stayed rank deficient after " +
                              std::to_string(kRedrawSlots) + " draws");
    });

    for (std::uint16_t a : attempts) out.redraws += a;
    return out;
}

EmpiricalEstimate estimate_rcp(std::span<const RateSample> samples, double threshold_T, RateKind which) {
    if (samples.empty()) throw DomainError("no samples to estimate from");
    long hits = 0;
    for (const RateSample& s : samples) hits += s.get(which) > threshold_T ? 1 : 0;
    const auto n = static_cast<long>(samples.size());
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return finish(p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, 0.0, 1.0);
}

EmpiricalEstimate estimate_mean(std::span<const RateSample> samples, RateKind which) {
    if (samples.empty()) throw DomainError("no samples to estimate from");
    const auto n = static_cast<double>(samples.size());
    CompensatedSum sum;
    for (const RateSample& s : samples) sum.add(s.get(which));
    const double mean = sum.value() / n;
    CompensatedSum sq;
    for (const RateSample& s : samples) {
        const double d = s.get(which) - mean;
        sq.add(d * d);
    }
    const double var = samples.size() > 1 ? sq.value() / (n - 1.0) : 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    return finish(mean, std::sqrt(var / n), static_cast<long>(samples.size()), -inf, inf);
}

EmpiricalEstimate empirical_rcp(const TrialConfig& cfg, double threshold_T, RateKind which, int threads) {
    const RateCampaign c = run_rate_campaign(cfg, threads);
    return estimate_rcp(c.samples, threshold_T, which);
}

EmpiricalEstimate empirical_ergodic(const TrialConfig& cfg, RateKind which, int threads) {
    const RateCampaign c = run_rate_campaign(cfg, threads);
    return estimate_mean(c.samples, which);
}

std::vector<double> sample_log_snr(std::span<const double> distances, const LinkBudget& budget, long count,
                                   std::uint64_t seed, int threads) {
    budget.validate();
    if (distances.empty()) throw DomainError("SNR sampling needs at least one BS distance");
    if (count < 1) throw DomainError("sample count must be at least 1");
    const double theta = budget.snr_scale();
    const double alpha = budget.alpha();
    const int m = budget.antennas_per_bs;

    std::vector<double> out(static_cast<std::size_t>(count));
    parallel_for(out.size(), threads, [&](std::size_t k) {
        RngStream rng(seed, k);
        double snr = 0.0;
        for (double d : distances) {
            double fading = 0.0;
            for (int i = 0; i < m; ++i) fading += std::norm(rng.complex_normal());
            const double shadow_db = budget.sigma_L_db * rng.normal();
            snr += theta * fading * std::pow(std::max(d, kMinDistanceM), -alpha) * std::pow(10.0, -shadow_db / 10.0);
        }
        out[k] = std::log(snr);
    });
    return out;
}

double ks_distance_normal(std::span<const double> samples, double mu, double sigma) {
    if (samples.empty()) throw DomainError("KS distance needs samples");
    if (!(sigma > 0.0)) throw DomainError("KS reference normal needs sigma > 0");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-(sorted[i] - mu) / (sigma * std::numbers::sqrt2));
        worst = std::max({worst, std::abs(cdf - static_cast<double>(i) / n),
                          std::abs(static_cast<double>(i + 1) / n - cdf)});
    }
    return worst;
}

double fraction_hadamard_below_exact(std::span<const RateSample> samples) {
    if (samples.empty()) return 0.0;
    long count = 0;
    for (const RateSample& s : samples) count += s.r_hadamard <= s.r_exact ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(samples.size());
}

}  // namespace compplan
