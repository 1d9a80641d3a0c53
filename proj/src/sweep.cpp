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

#include "trotterlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "trotterlab/bounds.hpp"
#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"

namespace trotterlab {
namespace {

constexpr std::size_t kUnitaryQubitLimit = 6;

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Reference {
  Schedule sched = Schedule::linear(1.0);
  Matrix initial;
  Matrix target;  // ground-space basis or exact-evolved state
  Matrix exact_unitary;
  std::string error;
};

}  // namespace

std::string to_string(TargetKind kind) {
  return kind == TargetKind::instantaneous_ground ? "instantaneous_ground" : "exact_evolved";
}

TargetKind target_kind_from_string(const std::string& name) {
  if (name == "instantaneous_ground" || name == "ground") return TargetKind::instantaneous_ground;
  if (name == "exact_evolved" || name == "exact") return TargetKind::exact_evolved;
  throw DomainError("unknown target kind '" + name + "'");
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.dt_grid.empty() || spec.T_grid.empty() || spec.fractions.empty() || spec.orderings.empty()) {
    throw DomainError("sweep: all grids must be nonempty");
  }
  if (spec.order != 1 && spec.order != 2) throw DomainError("sweep: order must be 1 or 2");
  for (double f : spec.fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("sweep: fractions must lie in (0, 1]");
  }
  for (double T : spec.T_grid) {
    if (!(T > 0.0)) throw DomainError("sweep: T values must be positive");
    for (double dt : spec.dt_grid) {
      if (!(dt > 0.0)) throw DomainError("sweep: dt values must be positive");
      if (!(dt < T)) throw DomainError("sweep: every dt must be below every T");
    }
  }
  if (spec.h1.qubit_count() != spec.h2.qubit_count()) throw DimensionError("sweep: H1/H2 qubit-count mismatch");
  if (spec.h1.qubit_count() > kDenseQubitCap) throw CapacityError("sweep: qubit count exceeds the dense cap");
}

std::size_t sweep_point_count(const SweepSpec& spec) {
  return sorted_unique(spec.dt_grid).size() * sorted_unique(spec.T_grid).size() *
         sorted_unique(spec.fractions).size() * sorted_unique(spec.orderings).size();
}

Schedule make_schedule(const SweepSpec& spec, double T) {
  switch (spec.ramp) {
    case RampKind::linear: return Schedule::linear(T);
    case RampKind::smoothstep: return Schedule::smoothstep(T);
    case RampKind::tabulated: return Schedule::tabulated(T, spec.table_x, spec.table_u);
  }
  return Schedule::linear(T);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const ProgressCallback& progress) {
  validate_sweep(spec);
  const SplitSystem system(spec.h1, spec.h2);
  const BoundReport report = coefficients(spec.h1, spec.h2);
  const bool unitary_mode = spec.with_operator_error && system.qubit_count() <= kUnitaryQubitLimit;

  const std::vector<double> Ts = sorted_unique(spec.T_grid);
  const std::vector<double> dts = sorted_unique(spec.dt_grid);
  const std::vector<double> fs = sorted_unique(spec.fractions);
  const std::vector<Ordering> orderings = sorted_unique(spec.orderings);

  std::vector<Reference> refs(Ts.size() * fs.size());
  parallel_for(refs.size(), spec.threads, [&](std::size_t g) {
    Reference& ref = refs[g];
    const double T = Ts[g / fs.size()];
    const double f = fs[g % fs.size()];
    try {
      ref.sched = make_schedule(spec, T);
      const double t_end = f * T;
      ref.initial = system.initial_state(ref.sched);
      if (spec.target == TargetKind::instantaneous_ground) {
        ref.target = ground_space(system.eigen_at(ref.sched.value(t_end)));
      } else {
        ref.target = exact_evolve(system, ref.sched, t_end, ref.initial, spec.exact_tol);
      }
      if (unitary_mode) ref.exact_unitary = exact_unitary(system, ref.sched, t_end, spec.exact_tol);
    } catch (const std::exception& e) {
      ref.error = e.what();
    }
  });

  struct Point {
    std::size_t ref;
    double dt;
    double T;
    double f;
    Ordering ordering;
  };
  std::vector<Point> points;
  for (std::size_t ti = 0; ti < Ts.size(); ++ti) {
    for (double dt : dts) {
      for (std::size_t fi = 0; fi < fs.size(); ++fi) {
        for (Ordering o : orderings) points.push_back({ti * fs.size() + fi, dt, Ts[ti], fs[fi], o});
      }
    }
  }

  std::vector<SweepRecord> records(points.size());
  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;
  parallel_for(points.size(), spec.threads, [&](std::size_t i) {
    const Point& p = points[i];
    const Reference& ref = refs[p.ref];
    SweepRecord& rec = records[i];
    rec.dt = p.dt;
    rec.T = p.T;
    rec.fraction = p.f;
    rec.ordering = p.ordering;
    rec.lemma1_bound = lemma_bounds(report, p.f * p.T, p.dt).first_order;
    rec.theorem1_bound = theorem1_infidelity_bound(report, p.T, p.dt);
    rec.infidelity = std::numeric_limits<double>::quiet_NaN();
    try {
      if (!ref.error.empty()) throw Error(ref.error);
      const TrotterPlan plan{spec.order, p.dt, p.ordering, p.f};
      rec.convergent = is_convergent(system, ref.sched, plan);
      Vector prepared;
      if (unitary_mode) {
        const Matrix u = trotter_unitary(system, ref.sched, plan);
        prepared = u * ref.initial.col(0);
        rec.op_norm_error = operator_norm(ref.exact_unitary - u);
      } else {
        prepared = trotter_state(system, ref.sched, plan, ref.initial.col(0));
      }
      rec.infidelity = spec.target == TargetKind::instantaneous_ground
                           ? ground_space_infidelity(prepared, ref.target)
                           : infidelity(prepared, ref.target.col(0));
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    const std::size_t finished = ++done;
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mu);
      progress(finished, points.size());
    }
  });
  return records;
}

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi) {
  if (xs.size() != ys.size()) throw DimensionError("fit_power_law: xs and ys differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= lo && xs[i] <= hi)) continue;
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(ys[i])) {
      throw DomainError("fit_power_law: in-window data must be positive and finite");
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  if (lx.size() < 4) {
    throw InsufficientDataError("fit_power_law: " + std::to_string(lx.size()) + " points in window, need 4");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_power_law: all abscissae coincide");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.lo = lo;
  fit.hi = hi;
  fit.points = lx.size();
  return fit;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.dt) << ',' << format_double(r.T) << ',' << format_double(r.fraction) << ','
        << to_string(r.ordering) << ',' << format_double(r.infidelity) << ','
        << (r.op_norm_error ? format_double(*r.op_norm_error) : std::string()) << ','
        << format_double(r.lemma1_bound) << ',' << format_double(r.theorem1_bound) << ','
        << (r.convergent ? 1 : 0) << '\n';
  }
  return out.str();
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << sweep_csv(records);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<SweepRecord> parse_sweep_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::vector<std::string> expected = split(kSweepCsvHeader, ',');
  if (table.header != expected) throw IoError("sweep CSV header does not match the documented schema");
  std::vector<SweepRecord> out;
  for (const auto& row : table.rows) {
    SweepRecord r;
    r.dt = parse_double(row[0]);
    r.T = parse_double(row[1]);
    r.fraction = parse_double(row[2]);
    r.ordering = ordering_from_string(row[3]);
    r.infidelity = parse_double(row[4]);
    if (!row[5].empty()) r.op_norm_error = parse_double(row[5]);
    r.lemma1_bound = parse_double(row[6]);
    r.theorem1_bound = parse_double(row[7]);
    if (row[8] != "0" && row[8] != "1") throw IoError("sweep CSV: convergent must be 0 or 1");
    r.convergent = row[8] == "1";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SweepRecord> load_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_sweep_csv(in);
}

}  // namespace trotterlab
