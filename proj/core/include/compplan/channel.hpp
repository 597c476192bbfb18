#pragma once

#include <cmath>
#include <span>
#include <utility>

#include "compplan/geometry.hpp"
#include "compplan/linalg.hpp"
#include "compplan/rng.hpp"

namespace compplan {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// Radio constants turning distance into received SNR. Defaults are the LTE-A
// outdoor micro setup: PL = -39 + 67 log10(d), 6 dB shadowing, 30 dBm users,
// -90 dBm noise per antenna, one antenna per BS.
struct LinkBudget {
    double a_db = -39.0;
    double b_db_per_decade = 67.0;
    double sigma_L_db = 6.0;
    double user_power_dbm = 30.0;
    double noise_power_dbm = -90.0;
    int antennas_per_bs = 1;

    // Throws DomainError unless sigma_L >= 0, b > 0, M >= 1 and all values finite.
    void validate() const;

    // sigma_s^2 / sigma^2, linear. The mW unit cancels in the ratio.
    double power_ratio() const { return dbm_to_mw(user_power_dbm - noise_power_dbm); }
    // (sigma_s^2 / sigma^2) 10^(-a/10): mean SNR of one antenna at 1 m without shadowing.
    double snr_scale() const { return power_ratio() * std::pow(10.0, -a_db / 10.0); }
    // Power-law path-loss exponent b / 10.
    double alpha() const { return b_db_per_decade / 10.0; }
    // Shadowing standard deviation in natural-log units, 0.1 ln(10) sigma_L.
    double sigma_z() const;
};

double path_loss_db(double d_m, const LinkBudget& budget);

struct ShadowingParams {
    double mu_z;
    double sigma_z;
};

// Log-normal law of z = d^(-alpha) 10^(-L/10).
ShadowingParams shadowing_lognormal_params(double d_m, const LinkBudget& budget);

// One NM x U realization. Row i = n*M + m is antenna m of BS n; column u is user u.
struct ChannelMatrix {
    CMatrix entries;
    int n_bs = 0;
    int n_ant = 0;
    int n_users = 0;
};

enum class FadingMode {
    rayleigh,  // h ~ CN(0, 1) per antenna-user pair
    unit,      // h = 1; isolates the large-scale terms in tests
};

// Draws H with [H]_{i,u} = h_{i,u} / 10^((PL(d_n^u) + L_n^u) / 20). One
// shadowing value L_n^u ~ N(0, sigma_L^2) per BS-user pair is shared by the
// M antennas of BS n. Draw order: all L_n^u (n-major), then all h_{i,u}
// (row-major). Throws InfeasibleUsers when U > N M.
ChannelMatrix sample_channel(const CoopRegion& region, std::span<const Point2D> user_positions,
                             const LinkBudget& budget, RngStream& rng,
                             FadingMode fading = FadingMode::rayleigh);

void require_zf_feasible(int users, int n_bs, int antennas_per_bs);

}  // namespace compplan
