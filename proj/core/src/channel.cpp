#include "compplan/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "compplan/error.hpp"

namespace compplan {

void LinkBudget::validate() const {
    const bool finite = std::isfinite(a_db) && std::isfinite(b_db_per_decade) && std::isfinite(sigma_L_db) &&
                        std::isfinite(user_power_dbm) && std::isfinite(noise_power_dbm);
    if (!finite) throw DomainError("link budget contains a non-finite value");
    if (!(b_db_per_decade > 0.0)) throw DomainError("path-loss slope b must be positive");
    if (sigma_L_db < 0.0) throw DomainError("shadowing std sigma_L must be non-negative");
    if (antennas_per_bs < 1) throw DomainError("antennas per BS must be at least 1");
}

double LinkBudget::sigma_z() const { return 0.1 * std::numbers::ln10 * sigma_L_db; }

double path_loss_db(double d_m, const LinkBudget& budget) {
    return budget.a_db + budget.b_db_per_decade * std::log10(d_m);
}

ShadowingParams shadowing_lognormal_params(double d_m, const LinkBudget& budget) {
    return {-budget.alpha() * std::log(d_m), budget.sigma_z()};
}

void require_zf_feasible(int users, int n_bs, int antennas_per_bs) {
    if (users < 1) throw DomainError("at least one user is required");
    if (users > n_bs * antennas_per_bs) throw InfeasibleUsers(users, n_bs * antennas_per_bs);
}

ChannelMatrix sample_channel(const CoopRegion& region, std::span<const Point2D> user_positions,
                             const LinkBudget& budget, RngStream& rng, FadingMode fading) {
    const int n_bs = static_cast<int>(region.bs_positions.size());
    const int n_ant = budget.antennas_per_bs;
    const int n_users = static_cast<int>(user_positions.size());
    require_zf_feasible(n_users, n_bs, n_ant);

    // Large-scale amplitude 10^(-(PL + L)/20) per (BS, user).
    std::vector<double> amplitude(static_cast<std::size_t>(n_bs * n_users));
    for (int n = 0; n < n_bs; ++n) {
        for (int u = 0; u < n_users; ++u) {
            const double d = std::max(distance(user_positions[u], region.bs_positions[n]), kMinDistanceM);
            const double shadow_db = budget.sigma_L_db * rng.normal();
            amplitude[n * n_users + u] = std::pow(10.0, -(path_loss_db(d, budget) + shadow_db) / 20.0);
        }
    }

    ChannelMatrix h{CMatrix(static_cast<std::size_t>(n_bs * n_ant), static_cast<std::size_t>(n_users)), n_bs,
                    n_ant, n_users};
    for (int n = 0; n < n_bs; ++n) {
        for (int m = 0; m < n_ant; ++m) {
            const auto row = static_cast<std::size_t>(n * n_ant + m);
            for (int u = 0; u < n_users; ++u) {
                const cdouble small_scale = fading == FadingMode::rayleigh ? rng.complex_normal() : cdouble{1.0};
                h.entries(row, static_cast<std::size_t>(u)) = small_scale * amplitude[n * n_users + u];
            }
        }
    }
    return h;
}

}  // namespace compplan
