#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "compplan/analytic.hpp"
#include "compplan/error.hpp"
#include "compplan/montecarlo.hpp"
#include "oracles.hpp"

using namespace compplan;

namespace {

ChannelMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<cdouble> v) {
    ChannelMatrix h{CMatrix(rows, cols), static_cast<int>(rows), 1, static_cast<int>(cols)};
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) h.entries(r, c) = v[r * cols + c];
    }
    return h;
}

ChannelMatrix random_channel(std::size_t rows, std::size_t cols, std::uint64_t stream) {
    RngStream rng(99, stream);
    ChannelMatrix h{CMatrix(rows, cols), static_cast<int>(rows), 1, static_cast<int>(cols)};
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) h.entries(r, c) = rng.complex_normal() * 1e-6;
    }
    return h;
}

}  // namespace

TEST_CASE("zf_filter") {
    SUBCASE("single column is the scaled adjoint") {
        const ChannelMatrix h = from_rows(2, 1, {{1.0, 2.0}, {-0.5, 0.25}});
        const CMatrix w = zf_filter(h);
        const double e = std::norm(h.entries(0, 0)) + std::norm(h.entries(1, 0));
        CHECK(std::abs(w(0, 0) - std::conj(h.entries(0, 0)) / e) < 1e-14);
        CHECK(std::abs(w(0, 1) - std::conj(h.entries(1, 0)) / e) < 1e-14);
        CHECK(std::abs((w * h.entries)(0, 0) - 1.0) < 1e-14);
    }
    SUBCASE("matches an independent pseudoinverse") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ChannelMatrix h = random_channel(3, 3, s);
            const CMatrix w = zf_filter(h);
            const oracle::EigenC ref = oracle::pinv_normal_equations(oracle::to_eigen(h.entries));
            const double scale = ref.cwiseAbs().maxCoeff();
            for (Eigen::Index i = 0; i < ref.rows(); ++i) {
                for (Eigen::Index j = 0; j < ref.cols(); ++j) {
                    CHECK(std::abs(w(i, j) - ref(i, j)) / scale < 1e-8);
                }
            }
            CHECK(max_abs(w * h.entries - CMatrix::identity(3)) < 1e-8);
        }
    }
    SUBCASE("rank deficient input") {
        const ChannelMatrix h = from_rows(2, 2, {1.0, 2.0, 2.0, 4.0});
        CHECK_THROWS_AS(zf_filter(h), SingularChannel);
        CHECK(std::isinf(sum_rate_lower(h, LinkBudget{})));
    }
}

TEST_CASE("sum rates") {
    const LinkBudget b;  // g = 1e12
    const double g = b.power_ratio();
    SUBCASE("scalar channel") {
        const ChannelMatrix h = from_rows(1, 1, {std::sqrt(1.0 / g)});
        CHECK(sum_rate_exact(h, b) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sum_rate_hadamard(h, b) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        const ChannelMatrix h4 = from_rows(1, 1, {std::sqrt(4.0 / g)});
        CHECK(sum_rate_hadamard(h4, b) - sum_rate_exact(h4, b) == doctest::Approx(std::log2(4.0 / 5.0)));
    }
    SUBCASE("zero channel") {
        const ChannelMatrix h = from_rows(2, 2, {0.0, 0.0, 0.0, 0.0});
        CHECK(sum_rate_exact(h, b) == 0.0);
    }
    SUBCASE("orthogonal columns make the lower and Hadamard rates coincide") {
        const ChannelMatrix h = from_rows(3, 2, {3e-6, 0.0, 0.0, cdouble(0.0, 2e-6), 0.0, 1e-6});
        CHECK(sum_rate_lower(h, b) == doctest::Approx(sum_rate_hadamard(h, b)).epsilon(1e-13));
    }
    SUBCASE("eigenvalue oracle and bound ordering") {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const ChannelMatrix h = random_channel(3, 3, 100 + s);
            const double exact = sum_rate_exact(h, b);
            CHECK(std::abs(exact - oracle::log2_det_eigen(oracle::to_eigen(h.entries), g)) < 1e-8);
            const RateSample r = rate_sample(h, b);
            CHECK(r.r_lower <= r.r_exact + 1e-9);
            CHECK(r.r_lower <= r.r_hadamard + 1e-9);
        }
    }
}

TEST_CASE("covariance identities on campaign draws") {
    const LinkBudget b;
    const CoopRegion r = build_coop_region(3, 390.0);
    const std::vector<Point2D> users(3, worst_point(r));
    for (std::uint64_t t = 0; t < 200; ++t) {
        RngStream rng(3, t);
        const ChannelMatrix h = sample_channel(r, users, b, rng);
        const CMatrix w = zf_filter(h);
        const CMatrix wh = w * h.entries;
        CHECK(max_abs(wh - CMatrix::identity(3)) < 1e-8);
        // W H H^H W^H = I (signal covariance / sigma_s^2).
        CHECK(max_abs(wh * adjoint(wh) - CMatrix::identity(3)) < 1e-8);
        const oracle::EigenC ginv = (oracle::to_eigen(h.entries).adjoint() * oracle::to_eigen(h.entries)).inverse();
        const oracle::EigenC wwh = oracle::to_eigen(w * adjoint(w));
        CHECK((wwh - ginv).cwiseAbs().maxCoeff() / ginv.cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("campaign determinism and thread independence") {
    const LinkBudget b;
    const CoopRegion r = build_coop_region(3, 390.0);
    TrialConfig cfg{r, std::vector<Point2D>(3, worst_point(r)), b, 3000, 42};
    const RateCampaign one = run_rate_campaign(cfg, 1);
    const RateCampaign four = run_rate_campaign(cfg, 4);
    REQUIRE(one.samples.size() == four.samples.size());
    for (std::size_t i = 0; i < one.samples.size(); ++i) {
        CHECK(one.samples[i].r_exact == four.samples[i].r_exact);
        CHECK(one.samples[i].r_hadamard == four.samples[i].r_hadamard);
    }
    CHECK(one.redraws == four.redraws);

    const EmpiricalEstimate e1 = estimate_mean(one.samples, RateKind::exact);
    const EmpiricalEstimate e4 = estimate_mean(four.samples, RateKind::exact);
    CHECK(e1.mean == e4.mean);
    CHECK(e1.std_error == e4.std_error);

    cfg.seed = 43;
    const RateCampaign other = run_rate_campaign(cfg, 1);
    CHECK(other.samples[0].r_exact != one.samples[0].r_exact);
}

TEST_CASE("empirical estimators") {
    const LinkBudget b;
    const CoopRegion r = build_coop_region(3, 390.0);
    TrialConfig cfg{r, std::vector<Point2D>(3, worst_point(r)), b, 2000, 7};
    const RateCampaign c = run_rate_campaign(cfg);

    // log2 det(I + g H^H H) >= 0 on every draw.
    const EmpiricalEstimate all = estimate_rcp(c.samples, -1.0, RateKind::exact);
    CHECK(all.mean == 1.0);
    // R'' goes negative when the SNR product is below 1, so only a far
    // negative threshold is certain.
    CHECK(estimate_rcp(c.samples, -1000.0, RateKind::hadamard).mean == 1.0);
    CHECK(all.ci_lo <= all.mean);
    CHECK(all.ci_hi >= all.mean);

    const EmpiricalEstimate lower = estimate_mean(c.samples, RateKind::lower);
    const EmpiricalEstimate exact = estimate_mean(c.samples, RateKind::exact);
    CHECK(lower.mean <= exact.mean);
    CHECK(exact.ci_lo <= exact.mean);
    CHECK(exact.mean <= exact.ci_hi);
    CHECK(exact.std_error >= 0.0);
    CHECK_THROWS_AS(estimate_rcp(std::span<const RateSample>{}, 1.0, RateKind::exact), DomainError);
}

TEST_CASE("deterministic channel gives zero-variance rate") {
    LinkBudget b;
    b.sigma_L_db = 0.0;
    const CoopRegion r = build_coop_region(1, 200.0);
    TrialConfig cfg{r, {{50.0, 0.0}}, b, 200, 1, FadingMode::unit};
    const EmpiricalEstimate e = empirical_ergodic(cfg, RateKind::exact);
    const double snr = b.power_ratio() * std::pow(10.0, -path_loss_db(50.0, b) / 10.0);
    CHECK(e.mean == doctest::Approx(std::log2(1.0 + snr)).epsilon(1e-12));
    CHECK(e.std_error == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("trial config validation") {
    const LinkBudget b;
    const CoopRegion r = build_coop_region(1, 200.0);
    TrialConfig cfg{r, {{1.0, 1.0}, {2.0, 2.0}}, b, 10, 1};
    CHECK_THROWS_AS(cfg.validate(), InfeasibleUsers);
    cfg.user_positions.pop_back();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("ks_distance_normal") {
    RngStream rng(8, 0);
    std::vector<double> z(50000);
    for (double& v : z) v = 2.0 + 0.5 * rng.normal();
    CHECK(ks_distance_normal(z, 2.0, 0.5) < oracle::ks_critical_1pct(z.size()));
    CHECK(ks_distance_normal(z, 2.5, 0.5) > 0.3);
}

TEST_CASE("log SNR samples follow the fitted log-normal at low shadowing") {
    LinkBudget b;
    b.sigma_L_db = 4.0;
    const std::vector<double> d(3, 225.0);
    const SnrDistribution fit = snr_lognormal_fit(d, b);
    const auto samples = sample_log_snr(d, b, 100000, 3);
    CHECK(ks_distance_normal(samples, fit.mu, fit.sigma) < 0.03);
    const auto again = sample_log_snr(d, b, 100000, 3, 4);
    CHECK(samples == again);
}
