#include "etdg/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "etdg/sparse_solver.hpp"

namespace etdg {

void RunConfig::validate() const {
  if (experiment != "hankel" && experiment != "sinsin" && experiment != "planewave" &&
      experiment != "varomega") {
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  }
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  if (degrees.empty()) throw std::invalid_argument("no degrees selected");
  for (int p : degrees) {
    if (p < 1) throw std::invalid_argument("degrees must be >= 1");
  }
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (dof_cap < 1) throw std::invalid_argument("dof cap must be positive");
  if (quadrature_bump < 0) throw std::invalid_argument("quadrature bump must be >= 0");
  for (double w : omegas) {
    if (!(w > 0.0)) throw std::invalid_argument("omega values must be positive");
  }
  if (experiment == "varomega" && !omegas.empty()) {
    throw std::invalid_argument("varomega uses its own variable wavenumber; omit --omega");
  }
}

RunConfig default_config(const std::string& experiment) {
  RunConfig c;
  c.experiment = experiment;
  if (experiment == "hankel") {
    c.degrees = {3, 4, 5};
    c.levels = 4;
    c.omegas = {10.0};
  } else if (experiment == "sinsin") {
    c.degrees = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
    c.levels = 1;
    c.omegas = {1.0};
  } else if (experiment == "planewave") {
    c.degrees = {2, 3, 4};
    c.levels = 8;
    c.omegas = {100.0, 500.0, 750.0, 1000.0};
  } else if (experiment == "varomega") {
    c.degrees = {3, 4, 5};
    c.levels = 4;
  }
  c.validate();
  return c;
}

Mesh experiment_mesh(const std::string& experiment, int level) {
  if (level < 0) throw std::invalid_argument("experiment_mesh: negative level");
  if (experiment == "planewave") {
    const int rings = static_cast<int>(std::lround(8.0 * std::pow(2.0, 0.5 * level)));
    return build_unit_disk_mesh(rings);
  }
  return build_unit_square_mesh(4 << level);
}

namespace {

std::string run_context(int p, double h, const std::string& omega) {
  std::ostringstream s;
  s << "p=" << p << ", h=" << format_double(h) << ", omega=" << omega;
  return s.str();
}

}  // namespace

std::vector<RunRecord> run_experiment(const RunConfig& config) {
  config.validate();
  std::vector<std::shared_ptr<const Mesh>> meshes;
  for (int level = 0; level < config.levels; ++level) {
    meshes.push_back(std::make_shared<const Mesh>(experiment_mesh(config.experiment, level)));
  }
  if (config.mesh_dump) {
    std::ofstream out(*config.mesh_dump);
    if (!out) throw std::runtime_error("cannot write mesh dump " + config.mesh_dump->string());
    for (int level = 0; level < config.levels; ++level) {
      out << "# " << config.experiment << " level " << level << '\n';
      write_mesh(*meshes[level], out);
    }
  }

  std::vector<ManufacturedCase> cases;
  if (config.experiment == "varomega") {
    cases.push_back(var_omega_case());
  } else {
    const std::vector<double> omegas =
        config.omegas.empty() ? default_config(config.experiment).omegas : config.omegas;
    for (double w : omegas) cases.push_back(case_by_name(config.experiment, w));
  }

  SolveOptions options;
  options.policy = config.policy;
  std::vector<RunRecord> records;
  for (Method method : config.methods) {
    for (int p : config.degrees) {
      for (const auto& exact : cases) {
        const std::string omega_text = exact.omega.is_constant()
                                           ? format_double(exact.omega.representative())
                                           : exact.omega.label();
        for (int level = 0; level < config.levels; ++level) {
          const Mesh& mesh = *meshes[level];
          RunRecord rec;
          ErrorReport& r = rec.report;
          r.method = std::string(method_tag(method));
          r.p = p;
          r.h = mesh.max_diameter();
          r.hnr = level;
          r.omega = omega_text;
          r.dofs = dof_count(method, mesh.num_elements(), p);
          if (r.dofs > config.dof_cap) {
            rec.status = RunStatus::skipped;
            rec.message = "dof cap exceeded (" + std::to_string(r.dofs) + " > " +
                          std::to_string(config.dof_cap) + ") at " +
                          run_context(p, r.h, omega_text);
            records.push_back(std::move(rec));
            continue;
          }
          try {
            const auto space = std::make_shared<const BrokenSpace>(meshes[level], p);
            FormParameters params{exact.omega, config.alpha};
            const SolutionField sol =
                solve(method, space, params, exact.source(), exact.impedance(), options);
            r.dofs = sol.dofs;
            r.l2error = l2_error(*space, sol.coefficients, exact, config.quadrature_bump,
                                 config.policy);
            r.dgerror = dg_error(*space, sol.coefficients, exact, config.quadrature_bump,
                                 config.policy);
            r.dofspwl = dofs_per_wavelength(static_cast<double>(r.dofs),
                                            exact.omega.representative(), mesh.domain_area());
            if (!std::isfinite(r.l2error) || !std::isfinite(r.dgerror)) {
              throw SolverError("non-finite error norms", sol.rcond);
            }
          } catch (const SolverError& e) {
            rec.status = RunStatus::failed;
            rec.message = std::string(method_tag(method)) + " solve failed at " +
                          run_context(p, r.h, omega_text) + ": " + e.what();
          }
          records.push_back(std::move(rec));
        }
      }
    }
  }
  if (config.output) {
    const auto ok = successful(records);
    if (!ok.empty()) emit_csv(ok, *config.output);
  }
  return records;
}

std::vector<ErrorReport> successful(const std::vector<RunRecord>& records) {
  std::vector<ErrorReport> out;
  for (const auto& r : records) {
    if (r.status == RunStatus::ok) out.push_back(r.report);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_csv(const std::vector<ErrorReport>& reports, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : reports) {
    if (r.omega.find(',') != std::string::npos) {
      throw std::invalid_argument("omega label must not contain a comma");
    }
    out << r.method << ',' << r.p << ',' << format_double(r.h) << ',' << r.hnr << ',' << r.dofs
        << ',' << format_double(r.l2error) << ',' << format_double(r.dgerror) << ',' << r.omega
        << ',' << format_double(r.dofspwl) << '\n';
  }
}

void emit_csv(const std::vector<ErrorReport>& reports, const std::filesystem::path& path) {
  if (reports.empty()) throw std::invalid_argument("emit_csv: no reports to write");
  std::ostringstream text;
  write_csv(reports, text);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
  out << text.str();
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

namespace {

template <class T>
T parse_number(const std::string& field, int line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("read_csv: bad number '" + field + "' on line " +
                             std::to_string(line));
  }
  return value;
}

}  // namespace

std::vector<ErrorReport> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("read_csv: missing or unexpected header");
  }
  std::vector<ErrorReport> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) {
      throw std::runtime_error("read_csv: expected 9 fields on line " + std::to_string(line_no));
    }
    ErrorReport r;
    r.method = f[0];
    r.p = parse_number<int>(f[1], line_no);
    r.h = parse_number<double>(f[2], line_no);
    r.hnr = parse_number<int>(f[3], line_no);
    r.dofs = parse_number<long long>(f[4], line_no);
    r.l2error = parse_number<double>(f[5], line_no);
    r.dgerror = parse_number<double>(f[6], line_no);
    r.omega = f[7];
    r.dofspwl = parse_number<double>(f[8], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ErrorReport> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
  return read_csv(in);
}

std::string summarize(const std::vector<ErrorReport>& reports) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ErrorReport*>> groups;
  for (const auto& r : reports) {
    const std::string key = r.method + '\x1f' + std::to_string(r.p) + '\x1f' + r.omega;
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  auto rate = [](double e0, double e1, double h0, double h1) -> std::string {
    if (!(e0 > 0.0 && e1 > 0.0 && h1 < h0)) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::log(e0 / e1) / std::log(h0 / h1));
    return buf;
  };

  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-6s %3s %-14s %4s %10s %10s %12s %12s %8s %8s %9s\n",
                "method", "p", "omega", "hnr", "h", "dofs", "l2error", "dgerror", "eoc_l2",
                "eoc_dg", "dofspwl");
  out += line;
  for (const auto& key : order) {
    const auto& rows = groups[key];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ErrorReport& r = *rows[i];
      std::string el2 = "-";
      std::string edg = "-";
      if (i > 0) {
        const ErrorReport& q = *rows[i - 1];
        el2 = rate(q.l2error, r.l2error, q.h, r.h);
        edg = rate(q.dgerror, r.dgerror, q.h, r.h);
      }
      std::snprintf(line, sizeof line,
                    "%-6s %3d %-14s %4d %10.4g %10lld %12.4e %12.4e %8s %8s %9.3f\n",
                    r.method.c_str(), r.p, r.omega.c_str(), r.hnr, r.h, r.dofs, r.l2error,
                    r.dgerror, el2.c_str(), edg.c_str(), r.dofspwl);
      out += line;
    }
  }
  return out;
}

}  // namespace etdg
