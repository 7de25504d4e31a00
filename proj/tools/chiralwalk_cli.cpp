// Copyright 2026 The Chiralwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "chiralwalk/chiralwalk.hpp"

namespace {

using namespace chiralwalk;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Options {
  int n = 1023;
  double theta = 0.0;
  std::string gamma = "s1";
  int marked = 0;
  double t_max = 100.0;
  double dt = 0.0;  // 0 = auto: t_max / 2000
  int k_levels = 6;
  int j_max = 9;
  double guard_margin = kDefaultGuardMargin;
  std::string theta_grid = "0:1.5:301";
  std::string gamma_grid;  // in gamma*n units; empty = 0 : 4*S1*n : 200
  std::string out;
};

std::vector<double> parse_grid(const std::string& text) {
  double start = 0.0, stop = 0.0;
  int count = 0;
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw InvalidParameterError("grid must be start:stop:count, got '" + text + "'");
  }
  try {
    start = std::stod(text.substr(0, first));
    stop = std::stod(text.substr(first + 1, second - first - 1));
    count = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw InvalidParameterError("grid must be start:stop:count, got '" + text + "'");
  }
  if (count < 1 || (count > 1 && stop < start)) {
    throw InvalidParameterError("grid bounds out of order in '" + text + "'");
  }
  std::vector<double> points(count);
  for (int i = 0; i < count; ++i) {
    points[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  return points;
}

GammaRule parse_gamma_rule(const std::string& mode) {
  if (mode == "s1") return GammaRule::exact_s1();
  if (mode == "asymptotic") return GammaRule::asymptotic();
  double value = 0.0;
  const auto result = std::from_chars(mode.data(), mode.data() + mode.size(), value);
  if (result.ec != std::errc() || result.ptr != mode.data() + mode.size()) {
    throw InvalidParameterError("gamma must be 's1', 'asymptotic', or a number; got '" + mode +
                                "'");
  }
  return GammaRule::fixed(value);
}

double resolve_gamma(const std::string& mode, const WalkSpectrum& spectrum) {
  return parse_gamma_rule(mode).resolve(spectrum);
}

void emit_preamble(CsvWriter& csv, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& config) {
  csv.comment("chiralwalk " + std::string(kVersion));
  csv.comment("command: " + command);
  for (const auto& [key, value] : config) csv.comment(key + "=" + value);
}

int finish(const CsvWriter& csv, const Options& opt, const std::string& default_name,
           std::size_t rows) {
  const std::string path = opt.out.empty() ? default_name : opt.out;
  write_text_atomic(path, csv.str());
  std::cout << "wrote " << path << " (" << rows << " rows)\n";
  return 0;
}

int run_spectrum(const Options& opt) {
  const ChiralCompleteGraph graph(opt.n, opt.theta);
  const WalkSpectrum spectrum = walk_spectrum(graph);
  const Eigen::VectorXd dense = dense_walk_spectrum(graph);

  // rank of each closed-form eigenvalue, for pairing with the sorted dense set
  std::vector<int> order(opt.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return spectrum.eigenvalues(a) != spectrum.eigenvalues(b)
               ? spectrum.eigenvalues(a) < spectrum.eigenvalues(b)
               : a < b;
  });
  std::vector<int> rank(opt.n);
  for (int r = 0; r < opt.n; ++r) rank[order[r]] = r;

  CsvWriter csv;
  emit_preamble(csv, "spectrum",
                {{"n", std::to_string(opt.n)}, {"theta", format_float(graph.theta())}});
  csv.row("j", "alpha_j", "E_closed", "E_dense_sorted_match");
  for (int j = 0; j < opt.n; ++j) {
    csv.row(j, spectrum.alphas(j), spectrum.eigenvalues(j), dense(rank[j]));
  }
  return finish(csv, opt, "spectrum.csv", static_cast<std::size_t>(opt.n));
}

int run_sums(const Options& opt) {
  const std::vector<double> thetas = parse_grid(opt.theta_grid);
  CsvWriter csv;
  emit_preamble(csv, "sums",
                {{"n", std::to_string(opt.n)},
                 {"theta_grid", opt.theta_grid},
                 {"guard_margin", format_float(opt.guard_margin)}});
  csv.row("theta", "S1_exact", "S1_asymptotic", "S2_exact", "S2_asymptotic", "near_critical");
  for (const double theta : thetas) {
    const ChiralCompleteGraph graph(opt.n, theta);
    const WalkSpectrum spectrum = walk_spectrum(graph);
    double s1 = kNan, s2 = kNan, s1a = kNan, s2a = kNan;
    try {
      s1 = sum_s(1, spectrum);
      s2 = sum_s(2, spectrum);
    } catch (const CriticalThetaError&) {
      // a term is excluded exactly at a critical phase; leave nan
    }
    try {
      s1a = s1_asymptotic(opt.n, graph.theta());
      s2a = s2_asymptotic(opt.n, graph.theta());
    } catch (const InvalidParameterError&) {
    }
    csv.row(theta, s1, s1a, s2, s2a, is_near_critical(graph.theta(), opt.n, opt.guard_margin));
  }
  return finish(csv, opt, "sums.csv", thetas.size());
}

int run_critical_thetas(const Options& opt) {
  const CriticalThetaTable table = critical_thetas(opt.n, opt.j_max);
  const ChiralCompleteGraph probe(opt.n, 0.0);
  CsvWriter csv;
  emit_preamble(csv, "critical-thetas",
                {{"n", std::to_string(opt.n)}, {"j_max", std::to_string(opt.j_max)}});
  csv.row("j", "theta_c_exact", "theta_c_approx", "E_j_at_theta_c");
  for (const CriticalTheta& entry : table.entries) {
    const ChiralCompleteGraph graph(opt.n, entry.theta_c_exact);
    csv.row(entry.j, entry.theta_c_exact, entry.theta_c_approx,
            walk_eigenvalue(entry.j, graph));
  }
  return finish(csv, opt, "critical_thetas.csv", table.entries.size());
}

int run_overlaps(const Options& opt) {
  const ChiralCompleteGraph graph(opt.n, opt.theta);
  const WalkSpectrum spectrum = walk_spectrum(graph);
  const double s1 = sum_s(1, spectrum);
  const std::string grid_text =
      opt.gamma_grid.empty() ? "0:" + format_float(4.0 * s1 * opt.n) + ":200" : opt.gamma_grid;
  const std::vector<double> gamma_n_grid = parse_grid(grid_text);
  const int k = std::min(opt.k_levels, opt.n);

  struct Point {
    std::vector<double> overlap_s, overlap_w, energy;
  };
  std::vector<Point> points(gamma_n_grid.size());
  parallel_for(gamma_n_grid.size(), [&](std::size_t i) {
    const SearchProblem problem{graph, gamma_n_grid[i] / opt.n, opt.marked};
    const SearchSpectrum search = diagonalize_search(problem);
    Point& point = points[i];
    for (int a = 0; a < k; ++a) {
      point.overlap_s.push_back(search.overlaps_s(a));
      point.overlap_w.push_back(search.overlaps_w(a));
      point.energy.push_back(search.energies(a));
    }
  });

  CsvWriter csv;
  emit_preamble(csv, "overlaps",
                {{"n", std::to_string(opt.n)},
                 {"theta", format_float(graph.theta())},
                 {"marked", std::to_string(opt.marked)},
                 {"k_levels", std::to_string(k)},
                 {"gamma_n_grid", grid_text}});
  csv.row("gamma_times_n", "a", "overlap_s", "overlap_w", "energy");
  for (std::size_t i = 0; i < gamma_n_grid.size(); ++i) {
    for (int a = 0; a < k; ++a) {
      csv.row(gamma_n_grid[i], a, points[i].overlap_s[a], points[i].overlap_w[a],
              points[i].energy[a]);
    }
  }
  const SearchSpectrum at_s1 = diagonalize_search(SearchProblem{graph, s1, opt.marked});
  const SupportPair pair = support_pair(at_s1);
  csv.comment("support_pair_at_gamma_s1: lower=" + std::to_string(pair.lower_index) +
              " upper=" + std::to_string(pair.upper_index) + " gap=" + format_float(pair.gap) +
              " combined_support=" + format_float(pair.combined_support) +
              " gamma_times_n=" + format_float(s1 * opt.n));
  return finish(csv, opt, "overlaps.csv", gamma_n_grid.size() * k);
}

int run_levels(const Options& opt) {
  const std::vector<double> thetas = parse_grid(opt.theta_grid);
  const int k = std::min(opt.k_levels, opt.n);
  const GammaRule rule = parse_gamma_rule(opt.gamma);
  std::vector<std::vector<double>> rows(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    try {
      const Eigen::MatrixXd levels = energy_level_sweep(opt.n, {thetas[i]}, k, rule);
      rows[i].assign(levels.data(), levels.data() + k);
    } catch (const CriticalThetaError&) {
      rows[i].assign(k, kNan);  // exactly critical grid point under the s1 rule
    }
  });

  CsvWriter csv;
  emit_preamble(csv, "levels",
                {{"n", std::to_string(opt.n)},
                 {"theta_grid", opt.theta_grid},
                 {"k_levels", std::to_string(k)},
                 {"gamma", opt.gamma},
                 {"guard_margin", format_float(opt.guard_margin)}});
  std::vector<std::string> header{"theta"};
  for (int a = 0; a < k; ++a) header.push_back("E" + std::to_string(a));
  header.push_back("near_critical");
  std::string header_line;
  for (std::size_t c = 0; c < header.size(); ++c) {
    header_line += (c ? "," : "") + header[c];
  }
  csv.row(header_line);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    std::string line = format_float(thetas[i]);
    for (int a = 0; a < k; ++a) line += "," + format_float(rows[i][a]);
    line += is_near_critical(ChiralCompleteGraph(opt.n, thetas[i]).theta(), opt.n,
                             opt.guard_margin)
                ? ",1"
                : ",0";
    csv.row(line);
  }
  return finish(csv, opt, "levels.csv", thetas.size());
}

int run_evolve(const Options& opt) {
  const ChiralCompleteGraph graph(opt.n, opt.theta);
  const WalkSpectrum spectrum = walk_spectrum(graph);
  const double gamma = resolve_gamma(opt.gamma, spectrum);
  const double dt = opt.dt > 0.0 ? opt.dt : opt.t_max / 2000.0;
  const SearchProblem problem{graph, gamma, opt.marked};
  const EvolutionTrace trace = success_trace(problem, opt.t_max, dt);
  const PeakReport peak = first_peak(trace);

  double predicted_p = kNan, predicted_t = kNan;
  try {
    const CGSums sums = cg_sums(spectrum, opt.guard_margin);
    predicted_p = sums.p_star.value_or(kNan);
    predicted_t = sums.t_star.value_or(kNan);
  } catch (const CriticalThetaError&) {
  }

  CsvWriter csv;
  emit_preamble(csv, "evolve",
                {{"n", std::to_string(opt.n)},
                 {"theta", format_float(graph.theta())},
                 {"gamma", opt.gamma},
                 {"gamma_value", format_float(gamma)},
                 {"marked", std::to_string(opt.marked)},
                 {"t_max", format_float(opt.t_max)},
                 {"dt", format_float(dt)}});
  csv.row("t", "p");
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    csv.row(trace.times[i], trace.success[i]);
  }
  csv.comment("t_peak=" + format_float(peak.t_peak) + " p_peak=" + format_float(peak.p_peak) +
              (peak.at_endpoint ? " at_endpoint=1" : ""));
  csv.comment("predicted_t_star=" + format_float(predicted_t) +
              " predicted_p_star=" + format_float(predicted_p));
  return finish(csv, opt, "evolve.csv", trace.times.size());
}

int run_reproduce(const std::string& id, const std::string& out) {
  Options opt;
  opt.out = out.empty() ? "fig" + id + ".csv" : out;
  if (id == "1b") {
    opt.theta = 0.0;
    return run_overlaps(opt);
  }
  if (id == "1c") {
    opt.theta = 0.0;
    opt.gamma = format_float(1.0 / opt.n);
    return run_evolve(opt);
  }
  if (id == "3" || id == "5") {
    return run_sums(opt);
  }
  if (id == "4a" || id == "4b" || id == "4c") {
    opt.theta = id == "4a" ? 0.8 : id == "4b" ? 1.2 : 1.4;
    return run_overlaps(opt);
  }
  if (id == "6") {
    return run_levels(opt);
  }
  if (id == "7a" || id == "7b" || id == "7c") {
    opt.theta = id == "7a" ? 0.8 : id == "7b" ? 1.2 : 1.4;
    opt.gamma = "s1";
    return run_evolve(opt);
  }
  throw InvalidParameterError(
      "unknown figure id '" + id + "'; valid ids: 1b 1c 3 4a 4b 4c 5 6 7a 7b 7c");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search by chiral continuous-time quantum walk on the modified complete graph"};
  app.require_subcommand(1);

  Options opt;
  std::string figure_id;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "vertex count (odd, >= 3)")->capture_default_str();
    cmd->add_option("--out", opt.out, "output CSV path (default <command>.csv)");
  };

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "closed-form walk eigenvalues with the dense cross-check");
  add_common(spectrum_cmd);
  spectrum_cmd->add_option("--theta", opt.theta, "chiral phase in radians")->capture_default_str();

  auto* sums_cmd = app.add_subcommand("sums", "spectral sums S1, S2 over a phase grid");
  add_common(sums_cmd);
  sums_cmd->add_option("--theta-grid", opt.theta_grid, "start:stop:count")->capture_default_str();
  sums_cmd->add_option("--guard-margin", opt.guard_margin, "critical guard half-width (rad)")
      ->capture_default_str();

  auto* critical_cmd =
      app.add_subcommand("critical-thetas", "phases where a walk eigenvalue crosses zero");
  add_common(critical_cmd);
  critical_cmd->add_option("--j-max", opt.j_max, "largest odd mode index")->capture_default_str();

  auto* overlaps_cmd = app.add_subcommand(
      "overlaps", "eigenstate overlaps with |s> and |w> across a jumping-rate grid");
  add_common(overlaps_cmd);
  overlaps_cmd->add_option("--theta", opt.theta, "chiral phase in radians")->capture_default_str();
  overlaps_cmd->add_option("--marked", opt.marked, "marked vertex")->capture_default_str();
  overlaps_cmd->add_option("--k-levels", opt.k_levels, "states per grid point")
      ->capture_default_str();
  overlaps_cmd->add_option("--gamma-grid", opt.gamma_grid,
                           "start:stop:count in gamma*n units (default 0:4*S1*n:200)");

  auto* levels_cmd = app.add_subcommand("levels", "lowest eigenenergies over a phase grid");
  add_common(levels_cmd);
  levels_cmd->add_option("--theta-grid", opt.theta_grid, "start:stop:count")
      ->capture_default_str();
  levels_cmd->add_option("--k-levels", opt.k_levels, "levels per grid point")
      ->capture_default_str();
  levels_cmd->add_option("--gamma", opt.gamma, "s1 | asymptotic | <value>")
      ->capture_default_str();
  levels_cmd->add_option("--guard-margin", opt.guard_margin, "critical guard half-width (rad)")
      ->capture_default_str();

  auto* evolve_cmd = app.add_subcommand("evolve", "success probability trace from |s>");
  add_common(evolve_cmd);
  evolve_cmd->add_option("--theta", opt.theta, "chiral phase in radians")->capture_default_str();
  evolve_cmd->add_option("--gamma", opt.gamma, "s1 | asymptotic | <value>")
      ->capture_default_str();
  evolve_cmd->add_option("--marked", opt.marked, "marked vertex")->capture_default_str();
  evolve_cmd->add_option("--tmax", opt.t_max, "trace length")->capture_default_str();
  evolve_cmd->add_option("--dt", opt.dt, "sample spacing (default tmax/2000)");
  evolve_cmd->add_option("--guard-margin", opt.guard_margin, "critical guard half-width (rad)")
      ->capture_default_str();

  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "canned presets: 1b 1c 3 4a 4b 4c 5 6 7a 7b 7c");
  reproduce_cmd->add_option("id", figure_id, "preset id")->required();
  reproduce_cmd->add_option("--out", opt.out, "output CSV path (default fig<id>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum_cmd->parsed()) return run_spectrum(opt);
    if (sums_cmd->parsed()) return run_sums(opt);
    if (critical_cmd->parsed()) return run_critical_thetas(opt);
    if (overlaps_cmd->parsed()) return run_overlaps(opt);
    if (levels_cmd->parsed()) return run_levels(opt);
    if (evolve_cmd->parsed()) return run_evolve(opt);
    if (reproduce_cmd->parsed()) return run_reproduce(figure_id, opt.out);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
