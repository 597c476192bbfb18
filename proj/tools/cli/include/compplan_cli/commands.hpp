#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "compplan_cli/config.hpp"

namespace compplan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

// Tabular data goes to cfg.output_path when set, else to `out`; human-readable
// messages to `log`. Each returns an exit code; configuration problems throw
// ConfigError or a core domain error.
int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_contour(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& log);

struct ValidationRow {
    std::string check;
    std::string param;
    std::string analytic;
    std::string empirical;
    std::string diff;
    std::string limit;
    std::string status;  // pass, fail or info
};

struct ValidationReport {
    double spacing_m = 0.0;
    long redraws = 0;
    std::vector<ValidationRow> rows;
};

// The validation campaign at the configured operating point and planned
// spacing. Throws InfeasibleTarget when no spacing meets the target.
ValidationReport run_validation(const RunConfig& cfg);

// Thresholds (b/s/Hz per user) compared between the analytic RCP and the
// Hadamard-bound empirical RCP.
inline const std::vector<double> kValidationThresholds{0.5, 1.0, 2.0, 4.0};

// (a_bar, b_bar) grid on which the closed-form ergodic rate is checked
// against quadrature.
inline const std::vector<double> kErgodicGridA{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
inline const std::vector<double> kErgodicGridB{0.2, 0.5, 1.0, 2.0, 5.0};

// Largest |closed form - quadrature| over the grid.
double ergodic_grid_max_error();

// Largest |q_series(x) - q_exact(x)| over x in [0, 8] at step 1e-3.
double q_series_max_error();

// Writes `# compplan <command>` and one `# key = value` line per setting.
void write_header(std::ostream& os, const std::string& command, const RunConfig& cfg);

}  // namespace compplan::cli
