#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "etdg/error_analysis.hpp"

namespace etdg {

enum class RunStatus { ok, skipped, failed };

struct RunRecord {
  ErrorReport report;
  RunStatus status = RunStatus::ok;
  std::string message;  // reason for a skipped or failed run
};

struct RunConfig {
  std::string experiment = "hankel";  // hankel | sinsin | planewave | varomega
  std::vector<Method> methods{Method::embedded_trefftz, Method::standard_dg};
  std::vector<int> degrees{3, 4, 5};
  int levels = 4;
  std::vector<double> omegas;  // empty: the experiment's own wavenumber
  double alpha = 10.0;
  int quadrature_bump = 0;
  long long dof_cap = 2'000'000;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> mesh_dump;  // plain-text dump of every mesh used
  ExecutionPolicy policy = ExecutionPolicy::parallel;

  void validate() const;
};

/// Default degrees, levels and wavenumbers for an experiment.
RunConfig default_config(const std::string& experiment);

/// Mesh for refinement level `level` (0-based): squares of 4*2^level cells per side, disks
/// of round(8*2^(level/2)) rings.
Mesh experiment_mesh(const std::string& experiment, int level);

/// Runs every (method, p, omega, level) in that nesting order. Solver failures are recorded
/// and do not stop the sweep; runs over the dof cap are skipped.
std::vector<RunRecord> run_experiment(const RunConfig& config);

/// Reports of the successful runs, in run order.
std::vector<ErrorReport> successful(const std::vector<RunRecord>& records);

inline constexpr const char* kCsvHeader = "method,p,h,hnr,dofs,l2error,dgerror,omega,dofspwl";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

void write_csv(const std::vector<ErrorReport>& reports, std::ostream& out);
/// Throws on an empty report list (no file is created) or an unwritable path.
void emit_csv(const std::vector<ErrorReport>& reports, const std::filesystem::path& path);
std::vector<ErrorReport> read_csv(std::istream& in);
std::vector<ErrorReport> read_csv(const std::filesystem::path& path);

/// Fixed-width table grouped by (method, p, omega) with L2 and DG EOC columns; "-" where no
/// previous level exists.
std::string summarize(const std::vector<ErrorReport>& reports);

}  // namespace etdg
