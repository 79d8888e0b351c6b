#include "rdperm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fenwick.hpp"
#include "rdperm/branching_graph.hpp"

namespace rdperm {

double ExperimentConfig::threshold(const std::string& name, double fallback) const {
  auto it = thresholds.find(name);
  return it == thresholds.end() ? fallback : it->second;
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("experiment: sizes must not be empty");
  if (sizes.front() < 1) throw std::invalid_argument("experiment: sizes must be positive");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("experiment: sizes must be strictly increasing");
  if (replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
  if (kmax < 1) throw std::invalid_argument("experiment: kmax must be >= 1");
  if (k < 1) throw std::invalid_argument("experiment: k must be >= 1");
}

void ExperimentReport::write_csv(std::ostream& out) const {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << "experiment,omega,replicate,n,statistic,value,seed\n";
  for (const auto& r : rows)
    out << experiment << ',' << omega << ',' << r.replicate << ',' << r.n << ',' << r.statistic << ',' << r.value
        << ',' << seed << '\n';
  for (const auto& [name, value] : summary)
    out << experiment << ',' << omega << ",all,0," << name << ',' << value << ',' << seed << '\n';
  out.flags(flags);
  out.precision(precision);
}

// ---------------------------------------------------------------------------
// trajectories

namespace {

std::vector<std::size_t> order_of_letters(const Trajectory& t, std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(t.block[a], t.key[a]) < std::pair(t.block[b], t.key[b]);
  });
  return idx;
}

// keys 1..m in uniformly random order
std::vector<std::int64_t> shuffled_keys(std::size_t m, RandomStream& rng) {
  std::vector<std::int64_t> keys(m);
  std::iota(keys.begin(), keys.end(), std::int64_t{1});
  for (std::size_t i = m; i > 1; --i)
    std::swap(keys[i - 1], keys[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
  return keys;
}

}  // namespace

Permutation Trajectory::at(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > key.size()) throw std::invalid_argument("trajectory: n out of range");
  const auto idx = order_of_letters(*this, static_cast<std::size_t>(n));
  std::vector<int> word(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) word[i] = static_cast<int>(idx[i]) + 1;
  return Permutation(std::move(word));
}

std::vector<std::int64_t> Trajectory::position_of_max() const {
  const std::size_t N = key.size();
  const auto idx = order_of_letters(*this, N);
  std::vector<int> rank(N);
  for (std::size_t i = 0; i < N; ++i) rank[idx[i]] = static_cast<int>(i) + 1;
  detail::Fenwick present(static_cast<int>(N));
  std::vector<std::int64_t> out(N);
  for (std::size_t j = 0; j < N; ++j) {
    present.add(rank[j], 1);
    out[j] = present.prefix(rank[j]);
  }
  return out;
}

Trajectory sample_trajectory(const OmegaPoint& omega, std::int64_t N, RandomStream& rng) {
  if (N < 1) throw std::invalid_argument("sample_trajectory: N must be >= 1");
  Trajectory t;
  const auto n = static_cast<std::size_t>(N);
  t.block.assign(n, 1);
  t.key.assign(n, 0);
  if (omega.is_star()) {
    t.key = shuffled_keys(n, rng);
    return t;
  }
  const auto& [alpha, p] = omega.pair();
  if (p < 1.0)
    for (auto& b : t.block) b = rng.bernoulli(p) ? 0 : 1;
  else
    std::fill(t.block.begin(), t.block.end(), 0);

  DualSampler dual(alpha);
  std::size_t uniform_count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (t.block[j] == 0)
      t.key[j] = dual.next(rng);
    else
      ++uniform_count;
  }
  t.filled_prefix = dual.filled_prefix();
  if (uniform_count > 0) {
    const auto keys = shuffled_keys(uniform_count, rng);
    std::size_t i = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (t.block[j] == 1) t.key[j] = keys[i++];
  }
  return t;
}

// ---------------------------------------------------------------------------
// replicate kernels

namespace {

using ReplicateFn = std::function<std::vector<TrajectoryStat>(int, RandomStream&)>;

std::vector<TrajectoryStat> run_replicates(const ExperimentConfig& config, const ReplicateFn& body) {
  std::vector<std::vector<TrajectoryStat>> per(static_cast<std::size_t>(config.replicates));
  auto one = [&](int r) {
    RandomStream rng = RandomStream::child(config.seed, static_cast<std::uint64_t>(r));
    per[static_cast<std::size_t>(r)] = body(r, rng);
  };
  if (config.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < config.replicates; ++r) one(r);
  } else {
    for (int r = 0; r < config.replicates; ++r) one(r);
  }
  std::vector<TrajectoryStat> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

// fraction of replicates whose `statistic` at size n satisfies pred
template <typename Pred>
double fraction_at(const std::vector<TrajectoryStat>& rows, int replicates, std::int64_t n, const std::string& statistic,
                   Pred pred) {
  int hits = 0;
  for (const auto& r : rows)
    if (r.n == n && r.statistic == statistic && pred(r.value)) ++hits;
  return static_cast<double>(hits) / replicates;
}

ExperimentReport start_report(const ExperimentConfig& config, const std::string& name) {
  config.validate();
  ExperimentReport rep;
  rep.experiment = name;
  rep.omega = config.omega.label();
  rep.seed = config.seed;
  return rep;
}

std::string fixed(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

ExperimentReport lln_position_of_max(const ExperimentConfig& config) {
  ExperimentReport rep = start_report(config, "lln");
  const std::int64_t N = config.sizes.back();
  const std::int64_t first = config.sizes.front();
  rep.rows = run_replicates(config, [&](int r, RandomStream& rng) {
    const Trajectory t = sample_trajectory(config.omega, N, rng);
    const auto pos = t.position_of_max();
    std::vector<TrajectoryStat> rows;
    double running = std::numeric_limits<double>::infinity();
    std::size_t next = 0;
    // the running minimum scans every n from the first reported size on
    for (std::int64_t n = first; n <= N; ++n) {
      const double ratio = static_cast<double>(pos[static_cast<std::size_t>(n - 1)]) / static_cast<double>(n);
      running = std::min(running, ratio);
      if (n == config.sizes[next]) {
        rows.push_back({r, n, "position_of_max_ratio", ratio});
        rows.push_back({r, n, "running_min", running});
        ++next;
      }
    }
    return rows;
  });
  const double floor = config.threshold("ratio_floor", 0.9);
  const double ceiling = config.threshold("min_ceiling", 0.05);
  rep.summary["fraction_ratio_at_least_" + fixed(floor)] =
      fraction_at(rep.rows, config.replicates, N, "position_of_max_ratio", [&](double v) { return v >= floor; });
  rep.summary["fraction_running_min_at_most_" + fixed(ceiling)] =
      fraction_at(rep.rows, config.replicates, N, "running_min", [&](double v) { return v <= ceiling; });
  return rep;
}

ExperimentReport nonrecord_positions(const ExperimentConfig& config) {
  if (config.omega.is_star()) throw UnsupportedExperiment("nonrecord: the apex has no non-record slots");
  ExperimentReport rep = start_report(config, "nonrecord");
  const auto& alpha = config.omega.pair().alpha;
  const std::int64_t N = config.sizes.back();
  std::vector<std::optional<std::int64_t>> slots;
  for (int k = 1; k <= config.kmax; ++k) {
    const auto a = alpha.at(k);
    slots.push_back(a ? std::optional<std::int64_t>(*a + 1) : std::nullopt);
  }

  int all_match = 0;
  std::vector<int> match(static_cast<std::size_t>(config.kmax), 0);
  rep.rows = run_replicates(config, [&](int r, RandomStream& rng) {
    const Trajectory t = sample_trajectory(config.omega, N, rng);
    std::vector<TrajectoryStat> rows;
    for (std::int64_t n : config.sizes) {
      const auto zeros = records(t.at(static_cast<int>(n))).zero_positions();
      rows.push_back({r, n, "nonrecord_count", static_cast<double>(zeros.size())});
      for (int k = 1; k <= config.kmax && k <= static_cast<int>(zeros.size()); ++k)
        rows.push_back({r, n, "nonrecord_" + std::to_string(k), static_cast<double>(zeros[static_cast<std::size_t>(k - 1)])});
    }
    return rows;
  });
  for (int r = 0; r < config.replicates; ++r) {
    std::map<std::string, double> last;
    for (const auto& row : rep.rows)
      if (row.replicate == r && row.n == N) last[row.statistic] = row.value;
    bool all = true;
    for (int k = 1; k <= config.kmax; ++k) {
      auto it = last.find("nonrecord_" + std::to_string(k));
      const auto& slot = slots[static_cast<std::size_t>(k - 1)];
      // an infinite alpha_k matches when there is no k-th non-record
      const bool ok = slot ? (it != last.end() && it->second == static_cast<double>(*slot)) : it == last.end();
      match[static_cast<std::size_t>(k - 1)] += ok;
      all = all && ok;
    }
    all_match += all;
  }
  for (int k = 1; k <= config.kmax; ++k)
    rep.summary["fraction_nonrecord_" + std::to_string(k) + "_at_slot"] =
        static_cast<double>(match[static_cast<std::size_t>(k - 1)]) / config.replicates;
  rep.summary["fraction_all_at_slots"] = static_cast<double>(all_match) / config.replicates;
  return rep;
}

ExperimentReport record_growth(const ExperimentConfig& config) {
  ExperimentReport rep = start_report(config, "record_growth");
  const std::int64_t N = config.sizes.back();
  const bool star = config.omega.is_star();
  const double p = star ? 0 : config.omega.pair().p;
  rep.rows = run_replicates(config, [&](int r, RandomStream& rng) {
    const Trajectory t = sample_trajectory(config.omega, N, rng);
    std::vector<TrajectoryStat> rows;
    for (std::int64_t n : config.sizes) {
      const auto rec = records(t.at(static_cast<int>(n))).record_positions().size();
      const double scale = star ? std::log(static_cast<double>(n)) : static_cast<double>(n) * p;
      rows.push_back({r, n, "record_count", static_cast<double>(rec)});
      if (scale > 0) rows.push_back({r, n, "record_ratio", static_cast<double>(rec) / scale});
    }
    return rows;
  });
  const double lo = config.threshold("band_lo", star ? 0.7 : 0.9);
  const double hi = config.threshold("band_hi", star ? 1.3 : 1.1);
  rep.summary["fraction_ratio_in_band_" + fixed(lo) + "_" + fixed(hi)] =
      fraction_at(rep.rows, config.replicates, N, "record_ratio", [&](double v) { return v >= lo && v <= hi; });
  return rep;
}

ExperimentReport boundary_convergence(const ExperimentConfig& config) {
  ExperimentReport rep = start_report(config, "boundary");
  const PathSpec spec = PathSpec::parse(config.path);
  if (config.k > config.sizes.front()) throw std::invalid_argument("boundary: k exceeds the smallest depth");

  OmegaPoint target = OmegaPoint::star();
  if (config.target) {
    target = *config.target;
  } else {
    const auto path = path_prefix(spec, static_cast<int>(config.sizes.back()));
    const LimitClass c = classify_limit(path);
    if (c.kind == LimitClass::Kind::undetermined)
      throw std::runtime_error("boundary: the path's limit is undetermined at depth " +
                               std::to_string(config.sizes.back()) + "; give a target");
    target = *c.omega;
  }
  rep.omega = config.path + "->" + target.label();
  const ApproxDistribution limit = limit_marginal(target, config.k);
  const auto budget = static_cast<std::uint64_t>(config.threshold("budget", 1e6));

  double previous = std::numeric_limits<double>::infinity();
  double worst_increase = 0;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    const auto n = config.sizes[i];
    const RecordWord rho = path_word(spec, static_cast<int>(n));
    double tv;
    if (config.exact)
      tv = total_variation(elementary_projection_exact(rho, config.k, budget), limit);
    else
      tv = total_variation(elementary_projection_mc(rho, config.k, config.samples,
                                                    RandomStream::child(config.seed, i).next(), config.execution),
                           limit);
    rep.rows.push_back({0, n, "L", reduced_L_real(rho)});
    rep.rows.push_back({0, n, "tv", tv});
    if (std::isfinite(previous)) worst_increase = std::max(worst_increase, tv - previous);
    previous = tv;
  }
  rep.summary["tv_final"] = previous;
  rep.summary["tv_worst_increase"] = worst_increase;
  return rep;
}

ExperimentReport dual_fills_positions(const ExperimentConfig& config) {
  if (config.omega.is_star()) throw UnsupportedExperiment("fill: needs an alpha");
  if (config.probes.empty()) throw std::invalid_argument("fill: no probes");
  ExperimentReport rep = start_report(config, "fill");
  std::vector<std::int64_t> probes = config.probes;
  std::sort(probes.begin(), probes.end());
  const AlphaSpec& alpha = config.omega.pair().alpha;

  rep.rows = run_replicates(config, [&](int r, RandomStream& rng) {
    DualSampler dual(alpha);
    std::vector<TrajectoryStat> rows;
    std::size_t next = 0;
    for (std::int64_t t = 1; t <= config.horizon && next < probes.size(); ++t) {
      dual.next(rng);
      while (next < probes.size() && dual.filled_prefix() >= probes[next])
        rows.push_back({r, probes[next++], "fill_time", static_cast<double>(t)});
    }
    for (; next < probes.size(); ++next) rows.push_back({r, probes[next], "fill_time", -1.0});
    return rows;
  });
  for (std::int64_t k : probes) {
    rep.summary["fraction_filled_" + std::to_string(k)] =
        fraction_at(rep.rows, config.replicates, k, "fill_time", [](double v) { return v > 0; });
  }
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.kind == "lln") return lln_position_of_max(config);
  if (config.kind == "nonrecord") return nonrecord_positions(config);
  if (config.kind == "record_growth") return record_growth(config);
  if (config.kind == "boundary") return boundary_convergence(config);
  if (config.kind == "fill") return dual_fills_positions(config);
  throw std::invalid_argument("unknown experiment kind '" + config.kind + "'");
}

}  // namespace rdperm
