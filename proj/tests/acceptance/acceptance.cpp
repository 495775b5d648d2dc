// Copyright 2026 The qcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: every criterion at its stated tolerance, one summary line
// each. Usage: acceptance [--only 1,2,...] [--known-unattainable 6,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcrit/exact_oracle.hpp"
#include "qcrit/gibbs_vqa.hpp"
#include "qcrit/observables.hpp"

namespace {

using namespace qcrit;

struct Outcome {
  bool passed = false;
  std::string summary;
};

// Every converged variational solve from criteria 1-6, for the bound check.
struct BoundRecord {
  ModelParams model;
  double temperature;
  double free_energy;
};
std::vector<BoundRecord> g_solves;

void record(const ThermalSolution& s) {
  if (s.converged) g_solves.push_back({s.model, s.temperature, s.free_energy});
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

void note(const std::string& line) { std::printf("    %s\n", line.c_str()); }

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (f.intercept + f.slope * x[k]);
    ss_res += r * r;
  }
  f.r2 = 1.0 - ss_res / syy;
  return f;
}

Outcome infinite_temperature() {
  SolveRequest r;
  r.model = {3, 1.0, 1.0};
  r.temperature = 100.0;
  r.blocks_p = 5;
  r.init = RandomInit{1};
  const ThermalSolution s = solve(r);
  record(s);
  const double target = -100.0 * 3.0 * std::log(2.0);
  const double rel = relative(s.free_energy, target);
  double worst_theta = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst_theta = std::max(worst_theta,
                           std::abs(std::remainder(s.params.theta()[i] - std::numbers::pi / 4,
                                                   std::numbers::pi / 2)));
  }
  return {rel <= 1e-2 && worst_theta <= 1e-2,
          format("rel F error %.2e (<= 1e-2), max |theta - pi/4| mod pi/2 %.2e (<= 1e-2)", rel,
                 worst_theta)};
}

Outcome free_energy_accuracy() {
  const std::vector<double> temps{2.0, 1.0, 0.5, 0.25, 0.1};
  bool ok = true;
  std::ostringstream summary;
  for (int n : {3, 4, 5}) {
    // N = 4 sits between the two stated bounds; the looser one applies.
    const double tol = n == 3 ? 1e-3 : 1e-2;
    double worst = 0.0;
    for (double lambda : {0.9, 1.1}) {
      const ModelParams model{n, 1.0, lambda};
      for (const ThermalSolution& s : anneal_schedule(model, temps, chain_seed(2, lambda))) {
        record(s);
        const double rel = relative(s.free_energy, exact_free_energy(model, s.temperature));
        note(format("N=%d lambda=%.1f T=%.2f rel %.2e converged %d", n, lambda, s.temperature, rel,
                    s.converged));
        worst = std::max(worst, rel);
      }
    }
    ok = ok && worst <= tol;
    summary << format("N=%d worst %.2e (<= %.0e)  ", n, worst, tol);
  }
  return {ok, summary.str()};
}

Outcome block_convergence() {
  const ModelParams model{4, 1.0, 1.0};
  const double fe = exact_free_energy(model, 0.5);
  std::vector<double> errors;
  std::ostringstream summary;
  for (int p : {1, 2, 3, 5}) {
    SolveRequest r;
    r.model = model;
    r.temperature = 0.5;
    r.blocks_p = p;
    r.init = RandomInit{5};
    const ThermalSolution s = solve(r);
    record(s);
    errors.push_back(relative(s.free_energy, fe));
    summary << format("p=%d %.2e  ", p, errors.back());
  }
  bool monotone = true;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    // Equal errors at the round-off floor count as non-increasing.
    monotone = monotone && errors[k] <= errors[k - 1] + 1e-12;
  }
  summary << format("non-increasing %s, p=5 %s 1e-3", monotone ? "yes" : "no",
                    errors.back() < 1e-3 ? "<" : ">=");
  return {monotone && errors.back() < 1e-3, summary.str()};
}

Outcome crossover_line() {
  std::vector<double> lambdas, temps;
  for (int k = 0; k <= 10; ++k) lambdas.push_back(0.5 + 0.1 * k);
  for (int k = 20; k >= 1; --k) temps.push_back(0.05 * k);
  const ModelParams model{3, 1.0, 0.0};
  ScanOptions options;
  options.seed = 7;
  options.delta_lambda = 1e-3;
  const std::vector<CrossoverRecord> scan = crossover_scan(model, lambdas, temps, options);
  const std::vector<CrossoverPoint> exact = exact_crossover(model, lambdas, temps, 1e-3);
  int hits = 0;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (const SusceptibilityCell& c : scan[i].cells) {
      record(c.center);
      record(c.minus);
      record(c.plus);
    }
    const bool hit = std::abs(scan[i].t_star - exact[i].t_star) <= 0.05 + 1e-12;
    hits += hit;
    note(format("lambda=%.1f T*_var %.4f T*_exact %.4f %s", lambdas[i], scan[i].t_star, exact[i].t_star,
                hit ? "ok" : "miss"));
    if (exact[i].t_star < exact[argmin].t_star) argmin = i;
  }
  bool v_shape = std::abs(lambdas[argmin] - 1.0) <= 0.1 + 1e-12;
  for (std::size_t i = 1; i <= argmin; ++i) v_shape = v_shape && exact[i].t_star < exact[i - 1].t_star;
  for (std::size_t i = argmin + 1; i < lambdas.size(); ++i) {
    v_shape = v_shape && exact[i].t_star > exact[i - 1].t_star;
  }
  return {hits >= 10 && v_shape,
          format("%d/11 within one T step (>= 10), exact line V-shaped with minimum at lambda=%.1f: %s",
                 hits, lambdas[argmin], v_shape ? "yes" : "no")};
}

Outcome two_site_anchor() {
  const ModelParams model{2, 1.0, 0.5};
  const double e = std::numbers::e;
  const double closed_f = -std::log(e * e + e + 1.0 / e + 1.0 / (e * e));
  const double f = exact_free_energy(model, 1.0);
  // chi = 8 beta [cosh(2 beta lambda) Z - 2 sinh^2(2 beta lambda)] / Z^2
  const double beta = 1.0, lambda = 0.5;
  const double z = 2.0 * std::cosh(2 * beta * lambda) + 2.0 * std::cosh(2 * beta);
  const double closed_chi =
      8.0 * beta * (std::cosh(2 * beta * lambda) * z - 2.0 * std::pow(std::sinh(2 * beta * lambda), 2)) /
      (z * z);
  const double chi = exact_susceptibility(model, 1.0, 1e-3).chi;
  SolveRequest r;
  r.model = model;
  r.temperature = 1.0;
  r.blocks_p = 3;
  r.init = RandomInit{4};
  const ThermalSolution s = solve(r);
  record(s);
  const double df = std::abs(f - closed_f);
  const double dchi = std::abs(chi - closed_chi);
  const double dvar = std::abs(s.free_energy - closed_f);
  return {df <= 1e-9 && dchi <= 1e-3 && std::abs(closed_chi - 0.9671) <= 1e-3 && dvar <= 1e-3,
          format("|F_exact - closed| %.1e (<= 1e-9), chi %.6f vs closed %.6f (+-1e-3), |F_var - F| %.1e "
                 "(<= 1e-3)",
                 df, chi, closed_chi, dvar)};
}

Outcome scaling_behaviour() {
  const std::vector<double> temps{1.0, 0.7, 0.5, 0.4, 0.3};
  const std::vector<double> lambdas{0.95, 1.0};
  StudyOptions options;
  options.seed = 6;
  const std::vector<ScalingCell> cells = scaling_study({6, 1.0, 0.0}, lambdas, temps, options);
  std::vector<double> inv_t, xi, tau;
  double xi_low_095 = std::nan("");
  bool complete = true;
  for (const ScalingCell& c : cells) {
    record(c.solution);
    const bool fitted = c.xi_fit && c.tau_fit;
    note(format("lambda=%.2f T=%.2f xi %.4f tau %.4f window %zu %s", c.lambda, c.temperature,
                c.xi_fit ? c.xi_fit->length_scale : std::nan(""),
                c.tau_fit ? c.tau_fit->length_scale : std::nan(""), c.window, c.error.c_str()));
    if (c.lambda == 1.0) {
      complete = complete && fitted;
      if (!fitted) continue;
      inv_t.push_back(1.0 / c.temperature);
      xi.push_back(c.xi_fit->length_scale);
      tau.push_back(c.tau_fit->length_scale);
    } else if (c.temperature == temps.back() && c.xi_fit) {
      xi_low_095 = c.xi_fit->length_scale;
    }
  }
  if (!complete || inv_t.size() < 3) return {false, "missing fits at lambda = 1"};
  const LineFit fx = linear_regression(inv_t, xi);
  const LineFit ft = linear_regression(inv_t, tau);
  const double trend = fx.intercept + fx.slope / temps.back();
  const bool growth = xi_low_095 > trend;

  // Same regressions on the exact Gibbs states, for reference.
  std::vector<double> ex_xi, ex_tau;
  for (double t : temps) {
    const ExactGibbs g = exact_gibbs({6, 1.0, 1.0}, t);
    ScalingCell cell;
    cell.spacings = default_spacings(6);
    cell.times = default_time_grid();
    measure_correlations(cell, g.density_matrix(), Propagator(g.spectral));
    if (cell.xi_fit && cell.tau_fit) {
      ex_xi.push_back(cell.xi_fit->length_scale);
      ex_tau.push_back(cell.tau_fit->length_scale);
    }
  }
  if (ex_xi.size() == temps.size()) {
    note(format("exact-state reference: R^2 xi %.4f, R^2 tau %.4f", linear_regression(inv_t, ex_xi).r2,
                linear_regression(inv_t, ex_tau).r2));
  }
  return {fx.r2 >= 0.95 && ft.r2 >= 0.95 && growth,
          format("R^2 xi %.4f (>= 0.95), R^2 tau %.4f (>= 0.95), xi(0.95, T=0.3) %.4f vs lambda=1 trend "
                 "%.4f: %s",
                 fx.r2, ft.r2, xi_low_095, trend, growth ? "above" : "not above")};
}

DensityMatrix wishart(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = m * m.adjoint();
  return DensityMatrix(rho / rho.trace().real());
}

RealVector uniform_vector(Eigen::Index size, std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  RealVector v(size);
  for (Eigen::Index k = 0; k < size; ++k) v[k] = u(rng);
  return v;
}

Outcome circuit_identities() {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> time(0.0, 3.0);
  std::uniform_real_distribution<double> field(0.2, 1.8);

  double worst_h = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const int n = 2 + draw % 3;
    const Propagator evolution(ModelParams{n, 1.0, field(rng)});
    const DensityMatrix rho = wishart(n, rng);
    const int site = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const double t = time(rng);
    worst_h = std::max(worst_h, std::abs(dynamical_correlation_hadamard(rho, evolution, site, t) -
                                         dynamical_correlation_direct(rho, evolution, site, t)));
  }

  double worst_g = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const int n = 2 + draw % 3;
    const int p = 1 + (draw / 3) % 3;
    FreeEnergyObjective objective(build_kitaev_ring({n, 1.0, field(rng)}), 0.2 + time(rng), p);
    const RealVector x = uniform_vector(n * (2 * p + 1), rng, 3.0);
    RealVector grad;
    objective.value_and_gradient(x, grad);
    double err = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      RealVector xp = x, xm = x;
      xp[k] += 1e-5;
      xm[k] -= 1e-5;
      const double fd = (objective.value(xp).free_energy - objective.value(xm).free_energy) / 2e-5;
      err = std::max(err, std::abs(fd - grad[k]));
    }
    worst_g = std::max(worst_g, err / std::max(grad.lpNorm<Eigen::Infinity>(), 1e-8));
  }

  double worst_s = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const int n = 2 + draw % 3;
    const int p = 1 + draw % 3;
    const HamiltonianTerms terms = build_kitaev_ring({n, 1.0, field(rng)});
    const AnsatzParams a = AnsatzParams::from_flat(n, p, uniform_vector(n * (2 * p + 1), rng, 3.0));
    const DensityMatrix in = initial_state(a.theta());
    worst_s = std::max(worst_s, std::abs(von_neumann_entropy(apply_circuit(in, a, terms)) -
                                         von_neumann_entropy(in)));
  }

  double worst_bound = 0.0;
  int violations = 0;
  for (const BoundRecord& r : g_solves) {
    const double gap = exact_free_energy(r.model, r.temperature) - r.free_energy;
    worst_bound = std::max(worst_bound, gap);
    violations += gap > 1e-9;
  }
  note(format("Hadamard vs direct worst %.2e over 50 draws (<= 1e-10)", worst_h));
  note(format("gradient vs central differences worst %.2e over 50 draws (<= 1e-6)", worst_g));
  note(format("entropy invariance worst %.2e over 20 draws (<= 1e-10)", worst_s));
  note(format("variational bound: %zu converged solves, %d violations, max F_exact - F_var %.2e", g_solves.size(),
              violations, worst_bound));
  return {worst_h <= 1e-10 && worst_g <= 1e-6 && worst_s <= 1e-10 && violations == 0 && !g_solves.empty(),
          format("hadamard %.1e, gradient %.1e, entropy %.1e, bound violations %d/%zu", worst_h, worst_g,
                 worst_s, violations, g_solves.size())};
}

std::set<int> parse_list(const char* text) {
  std::set<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  std::set<int> only;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = parse_list(argv[++i]);
    } else if (arg == "--known-unattainable" && i + 1 < argc) {
      known = parse_list(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only 1,2,...] [--known-unattainable 6,...]\n", argv[0]);
      return 1;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"infinite-temperature limit", infinite_temperature},
      {"free-energy accuracy vs oracle", free_energy_accuracy},
      {"block convergence", block_convergence},
      {"crossover line", crossover_line},
      {"two-site closed form", two_site_anchor},
      {"scaling behaviour", scaling_behaviour},
      {"circuit identities and variational bound", circuit_identities},
  };

  std::vector<std::string> lines;
  bool ok = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    std::printf("criterion %d: %s\n", id, criteria[k].first.c_str());
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string line = format("[%s] criterion %d (%s): ", outcome.passed ? "PASS" : "FAIL", id,
                              criteria[k].first.c_str()) +
                       outcome.summary + format(" [%.1fs]", secs);
    if (!outcome.passed && known.count(id)) line += " (known unattainable)";
    std::printf("%s\n", line.c_str());
    lines.push_back(line);
    if (!outcome.passed && !known.count(id)) ok = false;
  }
  std::printf("\nsummary\n");
  for (const std::string& line : lines) std::printf("%s\n", line.c_str());
  return ok ? 0 : 1;
}
