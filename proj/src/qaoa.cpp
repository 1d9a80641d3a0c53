// Copyright 2026 The trotterlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trotterlab/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/numerics.hpp"
#include "trotterlab/propagator.hpp"
#include "trotterlab/sweep.hpp"

namespace trotterlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class QaoaModel {
 public:
  QaoaModel(const PauliSum& h_p, const PauliSum& h_d) {
    if (h_p.qubit_count() != h_d.qubit_count()) throw DimensionError("QAOA: H_p and H_d qubit counts differ");
    if (h_p.qubit_count() > kDenseQubitCap) throw CapacityError("QAOA: qubit count exceeds the dense cap");
    hp_ = to_dense(h_p);
    eig_p_ = hermitian_eigen(hp_);
    eig_d_ = hermitian_eigen(to_dense(h_d));
    initial_ = eig_d_.vectors.col(0);
  }

  Vector state(const QaoaAngles& angles) const {
    angles.validate();
    Matrix x = initial_;
    for (std::size_t m = 0; m < angles.depth(); ++m) {
      apply_expm(eig_p_, angles.gammas[m], x);
      apply_expm(eig_d_, angles.betas[m], x);
    }
    return x.col(0);
  }

  double expectation(const QaoaAngles& angles) const {
    const Vector psi = state(angles);
    return (psi.adjoint() * hp_ * psi)(0, 0).real();
  }

 private:
  Matrix hp_;
  HermitianEigen eig_p_, eig_d_;
  Matrix initial_;
};

class ControlEngine {
 public:
  explicit ControlEngine(const ControlProblem& problem)
      : h1_(problem.h1), h2_(problem.h2), d_(SparseOperator::combine(-1.0, h1_, 1.0, h2_)),
        initial_(problem.initial_state) {
    if (problem.h1.qubit_count() != problem.h2.qubit_count()) {
      throw DimensionError("control problem: H1 and H2 qubit counts differ");
    }
    if (static_cast<std::size_t>(initial_.size()) != h1_.dim()) {
      throw DimensionError("control problem: initial state has the wrong dimension");
    }
  }

  SparseOperator generator(double u) const { return SparseOperator::combine(1.0 - u, h1_, u, h2_); }

  // states[k] is Psi after k bins.
  std::vector<Matrix> forward(const AnnealCurve& curve) const {
    curve.validate();
    std::vector<Matrix> states(curve.bins() + 1);
    states[0] = initial_;
    for (std::size_t k = 0; k < curve.bins(); ++k) {
      states[k + 1] = states[k];
      expm_action(generator(curve.values[k]), curve.dt_bin, states[k + 1]);
    }
    return states;
  }

  double objective(const Matrix& final_state) const {
    Matrix h_psi;
    h2_.apply(final_state, h_psi);
    return (final_state.adjoint() * h_psi)(0, 0).real();
  }

  double value_and_gradient(const AnnealCurve& curve, GradientForm form, std::vector<double>* grad) const {
    const std::vector<Matrix> states = forward(curve);
    const double j = objective(states.back());
    if (!grad) return j;
    grad->assign(curve.bins(), 0.0);
    Matrix lambda;
    h2_.apply(states.back(), lambda);
    for (std::size_t k = curve.bins(); k-- > 0;) {
      const SparseOperator h = generator(curve.values[k]);
      if (form == GradientForm::exact) {
        Matrix x = states[k];
        Matrix dx = Matrix::Zero(x.rows(), x.cols());
        expm_frechet_action(h, d_, curve.dt_bin, x, dx);
        (*grad)[k] = 2.0 * (lambda.adjoint() * dx)(0, 0).real();
      } else {
        Matrix d_psi;
        d_.apply(states[k + 1], d_psi);
        (*grad)[k] = 2.0 * curve.dt_bin * (lambda.adjoint() * d_psi)(0, 0).imag();
      }
      expm_action(h, -curve.dt_bin, lambda);
    }
    return j;
  }

 private:
  SparseOperator h1_, h2_, d_;
  Matrix initial_;
};

// Mean of the piecewise-constant curve over [a, b].
double curve_average(const AnnealCurve& curve, double a, double b) {
  const std::size_t first = std::min(curve.bins() - 1, static_cast<std::size_t>(std::floor(a / curve.dt_bin)));
  double area = 0.0;
  for (std::size_t k = first; k < curve.bins(); ++k) {
    const double lo = std::max(a, curve.dt_bin * static_cast<double>(k));
    const double hi = std::min(b, curve.dt_bin * static_cast<double>(k + 1));
    if (hi <= lo) {
      if (curve.dt_bin * static_cast<double>(k) >= b) break;
      continue;
    }
    area += curve.values[k] * (hi - lo);
  }
  return area / (b - a);
}

}  // namespace

void QaoaAngles::validate() const {
  if (gammas.empty()) throw DomainError("QAOA angles: depth must be positive");
  if (gammas.size() != betas.size()) throw DomainError("QAOA angles: gamma and beta lengths differ");
  for (std::size_t m = 0; m < gammas.size(); ++m) {
    if (!std::isfinite(gammas[m]) || !std::isfinite(betas[m])) throw DomainError("QAOA angles: non-finite entry");
  }
}

double QaoaAngles::total_time() const {
  double t = 0.0;
  for (std::size_t m = 0; m < gammas.size(); ++m) t += gammas[m] + betas[m];
  return t;
}

MaxcutInstance maxcut_hamiltonian(std::size_t n, int regularity, bool periodic) {
  if (n < 3) throw ConstructionError("maxcut: need at least 3 qubits");
  if (regularity != 2 && regularity != 3) throw ConstructionError("maxcut: regularity must be 2 or 3");
  if (regularity == 3 && n % 2 != 0) throw ConstructionError("maxcut: 3-regular instances need even n");
  if (n > kDenseQubitCap) throw CapacityError("maxcut: qubit count exceeds the dense cap");
  MaxcutInstance inst{PauliSum(n), PauliSum(n), {}};
  for (std::size_t i = 0; i + 1 < n; ++i) inst.edges.emplace_back(i, i + 1);
  if (periodic) inst.edges.emplace_back(n - 1, 0);
  if (regularity == 3) {
    for (std::size_t i = 0; i < n / 2; ++i) inst.edges.emplace_back(i, i + n / 2);
  }
  for (const auto& [i, j] : inst.edges) {
    PauliString zz(n);
    zz.set_letter(i, Pauli::Z);
    zz.set_letter(j, Pauli::Z);
    inst.problem.add_term(1.0, zz);
  }
  for (std::size_t i = 0; i < n; ++i) inst.driver += PauliSum::single(n, i, Pauli::X);
  return inst;
}

Vector qaoa_state(const PauliSum& h_p, const PauliSum& h_d, const QaoaAngles& angles) {
  return QaoaModel(h_p, h_d).state(angles);
}

double qaoa_expectation(const PauliSum& h_p, const PauliSum& h_d, const QaoaAngles& angles) {
  return QaoaModel(h_p, h_d).expectation(angles);
}

QaoaAngles optimize_qaoa(const PauliSum& h_p, const PauliSum& h_d, const QaoaAngles& seed, int restarts,
                         const QaoaOptions& options) {
  seed.validate();
  const QaoaModel model(h_p, h_d);
  const std::size_t depth = seed.depth();
  const bool paired = options.fixed_pair_total;
  const double total = options.pair_total;
  if (paired && !(total > 0.0)) throw DomainError("optimize_qaoa: pair total must be positive");

  auto unpack = [&](const std::vector<double>& v) {
    QaoaAngles a;
    if (paired) {
      a.gammas = v;
      for (double g : v) a.betas.push_back(total - g);
    } else {
      a.gammas.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(depth));
      a.betas.assign(v.begin() + static_cast<std::ptrdiff_t>(depth), v.end());
    }
    return a;
  };
  std::vector<double> x0 = seed.gammas;
  if (!paired) x0.insert(x0.end(), seed.betas.begin(), seed.betas.end());
  const std::vector<double> lower(x0.size(), 0.0);
  const std::vector<double> upper(x0.size(), paired ? total : kInf);
  for (std::size_t i = 0; i < x0.size(); ++i) x0[i] = std::clamp(x0[i], lower[i], upper[i]);

  const Objective objective = with_finite_difference_gradient(
      [&](const std::vector<double>& v) { return model.expectation(unpack(v)); }, options.fd_step, lower, upper);

  std::vector<std::vector<double>> starts{x0};
  std::mt19937 rng(options.rng_seed);
  std::normal_distribution<double> noise(0.0, options.restart_spread);
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x = x0;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i] + noise(rng), lower[i], upper[i]);
    starts.push_back(std::move(x));
  }
  std::vector<OptimizeResult> results(starts.size());
  parallel_for(starts.size(), 0, [&](std::size_t i) {
    results[i] = minimize_bounded(objective, starts[i], lower, upper, options.config);
  });
  const auto best = std::min_element(results.begin(), results.end(),
                                     [](const OptimizeResult& a, const OptimizeResult& b) { return a.value < b.value; });
  if (!std::isfinite(best->value)) throw OptimizationError("optimize_qaoa: non-finite objective");
  return unpack(best->x);
}

QaoaAngles bootstrap_angles(const QaoaAngles& prev, std::size_t new_depth) {
  prev.validate();
  if (new_depth <= prev.depth()) throw DomainError("bootstrap_angles: new depth must exceed the old depth");
  const double p_old = static_cast<double>(prev.depth());
  std::vector<double> xs;
  for (std::size_t m = 1; m <= prev.depth(); ++m) xs.push_back(static_cast<double>(m) / (p_old + 1.0));
  auto resample = [&](const std::vector<double>& ys) {
    std::vector<double> out;
    for (std::size_t m = 1; m <= new_depth; ++m) {
      const double x = static_cast<double>(m) / (static_cast<double>(new_depth) + 1.0);
      if (x <= xs.front()) {
        out.push_back(ys.front());
      } else if (x >= xs.back()) {
        out.push_back(ys.back());
      } else {
        const std::size_t hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
        const double w = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
        out.push_back((1.0 - w) * ys[hi - 1] + w * ys[hi]);
      }
    }
    return out;
  };
  return {resample(prev.gammas), resample(prev.betas)};
}

void AnnealCurve::validate() const {
  if (!(dt_bin > 0.0) || !std::isfinite(dt_bin)) throw DomainError("anneal curve: bin width must be positive");
  if (values.empty()) throw DomainError("anneal curve: no bins");
  for (double u : values) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("anneal curve: values must lie in [0, 1]");
  }
}

ControlProblem ControlProblem::make(PauliSum h1, PauliSum h2) {
  if (h1.qubit_count() != h2.qubit_count()) throw DimensionError("control problem: qubit counts differ");
  if (!h1.is_hermitian() || !h2.is_hermitian()) throw ValidityError("control problem: Hamiltonians must be Hermitian");
  const HermitianEigen eig = hermitian_eigen(to_dense(h1));
  Vector psi = eig.vectors.col(0);
  return {std::move(h1), std::move(h2), psi.normalized()};
}

Vector control_state(const ControlProblem& problem, const AnnealCurve& curve) {
  return ControlEngine(problem).forward(curve).back().col(0);
}

double control_objective(const ControlProblem& problem, const AnnealCurve& curve) {
  return ControlEngine(problem).value_and_gradient(curve, GradientForm::exact, nullptr);
}

std::vector<double> control_gradient(const ControlProblem& problem, const AnnealCurve& curve, GradientForm form) {
  std::vector<double> grad;
  ControlEngine(problem).value_and_gradient(curve, form, &grad);
  return grad;
}

AnnealCurve optimize_curve(const ControlProblem& problem, const AnnealCurve& seed, const CurveOptions& options,
                           OptimizeResult* report) {
  seed.validate();
  const ControlEngine engine(problem);
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < seed.bins(); ++k) {
    const bool locked = (k == 0 && seed.lock_first) || (k + 1 == seed.bins() && seed.lock_last);
    if (!locked) free.push_back(k);
  }
  AnnealCurve result = seed;
  if (free.empty()) return result;

  AnnealCurve work = seed;
  std::vector<double> full_grad;
  const Objective objective = [&](const std::vector<double>& x, std::vector<double>* grad) {
    for (std::size_t i = 0; i < free.size(); ++i) work.values[free[i]] = x[i];
    const double j = engine.value_and_gradient(work, options.gradient, grad ? &full_grad : nullptr);
    if (grad) {
      grad->resize(free.size());
      for (std::size_t i = 0; i < free.size(); ++i) (*grad)[i] = full_grad[free[i]];
    }
    return j;
  };
  std::vector<double> x0;
  for (std::size_t k : free) x0.push_back(seed.values[k]);
  const OptimizeResult opt = minimize_bounded(objective, x0, std::vector<double>(free.size(), 0.0),
                                              std::vector<double>(free.size(), 1.0), options.config);
  if (!std::isfinite(opt.value)) throw OptimizationError("optimize_curve: non-finite objective");
  for (std::size_t i = 0; i < free.size(); ++i) result.values[free[i]] = opt.x[i];
  if (report) *report = opt;
  return result;
}

AnnealCurve seed_from_qaoa(const QaoaAngles& angles, double fine_dt) {
  angles.validate();
  if (!(fine_dt > 0.0)) throw DomainError("seed_from_qaoa: fine_dt must be positive");
  std::vector<double> times, s;
  double elapsed = 0.0;
  for (std::size_t m = 0; m < angles.depth(); ++m) {
    const double layer = angles.gammas[m] + angles.betas[m];
    if (!(layer > 0.0)) throw DegenerateError("seed_from_qaoa: layer " + std::to_string(m + 1) + " has zero duration");
    times.push_back(elapsed + 0.5 * layer);
    s.push_back(angles.gammas[m] / layer);
    elapsed += layer;
  }
  const long bins = std::lround(elapsed / fine_dt);
  if (bins < 3) throw DomainError("seed_from_qaoa: fine_dt too coarse for the total time");
  AnnealCurve curve;
  curve.dt_bin = elapsed / static_cast<double>(bins);
  curve.values.resize(static_cast<std::size_t>(bins));
  const MonotoneCubic interp = times.size() > 1 ? MonotoneCubic(times, s) : MonotoneCubic();
  for (long k = 0; k < bins; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * curve.dt_bin;
    const double u = times.size() > 1 ? interp(t) : s.front();
    curve.values[static_cast<std::size_t>(k)] = std::clamp(u, 0.0, 1.0);
  }
  curve.values.front() = 1.0;
  curve.values.back() = 0.0;
  return curve;
}

QaoaAngles trotterize_curve(const AnnealCurve& curve, double step) {
  curve.validate();
  const double total = curve.total_time();
  if (!(step > 0.0)) throw DomainError("trotterize_curve: step must be positive");
  if (step > total * (1.0 + 1e-12)) throw DomainError("trotterize_curve: step exceeds the total time");
  const long steps = std::max(1L, std::lround(total / step));
  QaoaAngles out;
  for (long m = 0; m < steps; ++m) {
    const double a = static_cast<double>(m) * step;
    const double b = m + 1 == steps ? total : a + step;
    const double len = b - a;
    double u;
    if (m == 0 || m + 1 == steps) {
      u = curve_average(curve, a, b);
    } else {
      const auto k = static_cast<std::size_t>(std::floor(a / curve.dt_bin + 1e-9));
      u = curve.values[std::min(k, curve.bins() - 1)];
    }
    out.gammas.push_back(u * len);
    out.betas.push_back((1.0 - u) * len);
  }
  return out;
}

void save_angles_csv(const std::string& path, const QaoaAngles& angles) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "m,gamma,beta\n";
  for (std::size_t m = 0; m < angles.depth(); ++m) {
    out << m + 1 << ',' << format_double(angles.gammas[m]) << ',' << format_double(angles.betas[m]) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

QaoaAngles load_angles_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  const std::size_t g = table.column("gamma"), b = table.column("beta");
  QaoaAngles angles;
  for (const auto& row : table.rows) {
    angles.gammas.push_back(parse_double(row[g]));
    angles.betas.push_back(parse_double(row[b]));
  }
  angles.validate();
  return angles;
}

void save_curve_csv(const std::string& path, const AnnealCurve& curve) {
  std::vector<double> xs;
  for (std::size_t k = 0; k < curve.bins(); ++k) {
    xs.push_back((static_cast<double>(k) + 0.5) / static_cast<double>(curve.bins()));
  }
  save_tabulated_ramp(path, xs, curve.values);
}

QaoaAngles ladder_seed(int regularity, double pair_total) {
  constexpr double pi = std::numbers::pi;
  if (regularity == 3) return {{pi / 16.0, 3.0 * pi / 16.0}, {3.0 * pi / 16.0, pi / 16.0}};
  // Linear-ramp seed s_m = m/(P+1) with the pairwise total fixed.
  const double total = pair_total > 0.0 ? pair_total : 1.1;
  return {{total / 3.0, 2.0 * total / 3.0}, {2.0 * total / 3.0, total / 3.0}};
}

std::vector<PipelineLevel> run_pipeline(const PipelineConfig& config,
                                        const std::function<void(const PipelineLevel&)>& on_level) {
  if (config.p_min < 1 || config.p_max < config.p_min) throw DomainError("pipeline: need 1 <= p_min <= p_max");
  const MaxcutInstance inst = maxcut_hamiltonian(config.n, config.regularity, config.periodic);
  const Matrix ground = ground_space(hermitian_eigen(to_dense(inst.problem)));
  const ControlProblem problem = ControlProblem::make(inst.driver, inst.problem);

  QaoaOptions qopt = config.qaoa;
  qopt.fixed_pair_total = config.regularity == 2 && config.pair_total > 0.0;
  qopt.pair_total = config.pair_total;

  std::vector<PipelineLevel> levels;
  QaoaAngles angles;
  const int p_start = std::min(2, config.p_min);
  for (int p = p_start; p <= config.p_max; ++p) {
    try {
      QaoaAngles seed;
      if (p == p_start) {
        seed = ladder_seed(config.regularity, config.pair_total);
        if (p == 1) seed = {{seed.gammas[0]}, {seed.betas[0]}};
      } else {
        seed = bootstrap_angles(angles, static_cast<std::size_t>(p));
      }
      angles = optimize_qaoa(inst.problem, inst.driver, seed, config.restarts, qopt);
      if (p < config.p_min) continue;

      PipelineLevel level;
      level.angles = angles;
      level.row.P = p;
      level.row.T_total = angles.total_time();
      const QaoaModel model(inst.problem, inst.driver);
      level.row.J_qaoa = model.expectation(angles);
      level.row.infid_qaoa = ground_space_infidelity(model.state(angles), ground);

      level.curve = optimize_curve(problem, seed_from_qaoa(angles, config.fine_dt), config.curve);
      level.row.J_curve = control_objective(problem, level.curve);
      level.row.infid_curve = ground_space_infidelity(control_state(problem, level.curve), ground);

      level.trotterized = trotterize_curve(level.curve, level.row.T_total / static_cast<double>(p));
      level.row.infid_trotterized = ground_space_infidelity(model.state(level.trotterized), ground);
      if (on_level) on_level(level);
      levels.push_back(std::move(level));
    } catch (const Error& e) {
      throw OptimizationError("pipeline failed at P=" + std::to_string(p) + ": " + e.what());
    }
  }
  return levels;
}

std::string pipeline_csv(const std::vector<PipelineRow>& rows) {
  std::ostringstream out;
  out << kPipelineCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.P << ',' << format_double(r.T_total) << ',' << format_double(r.J_qaoa) << ','
        << format_double(r.J_curve) << ',' << format_double(r.infid_qaoa) << ',' << format_double(r.infid_curve)
        << ',' << format_double(r.infid_trotterized) << '\n';
  }
  return out.str();
}

std::vector<PipelineRow> parse_pipeline_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  if (table.header != split(kPipelineCsvHeader, ',')) throw IoError("pipeline CSV header does not match the schema");
  std::vector<PipelineRow> rows;
  for (const auto& row : table.rows) {
    PipelineRow r;
    r.P = static_cast<int>(parse_double(row[0]));
    r.T_total = parse_double(row[1]);
    r.J_qaoa = parse_double(row[2]);
    r.J_curve = parse_double(row[3]);
    r.infid_qaoa = parse_double(row[4]);
    r.infid_curve = parse_double(row[5]);
    r.infid_trotterized = parse_double(row[6]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace trotterlab
