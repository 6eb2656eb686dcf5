// One function per CLI subcommand. All of them return the process exit code
// for the happy path (always 0 — verdicts, including "undecided" or a failed
// verification, are results, not errors); error exit codes are assigned by
// main from the exception type (ValidationError -> 1, SolverAbort -> 2).
#pragma once

#include <string>
#include <vector>

namespace nlfront::cli {

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool force_plot);
int cmd_sweep(const std::string& config_path, const std::vector<double>& alphas,
              const std::string& out_dir);
int cmd_rates(const std::string& csv_path, double t_lo, double t_hi, const std::string& law,
              const std::string& report_path);
int cmd_semiwave(const std::string& config_path, const std::string& out_dir);
int cmd_verify_subeig(const std::string& config_path, const std::string& out_dir);
int cmd_verify_envelope(const std::string& config_path, const std::string& out_dir);
int cmd_plot(const std::string& csv_path, const std::string& law, const std::string& out_svg);

}  // namespace nlfront::cli
