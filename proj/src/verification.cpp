#include "rdperm/verification.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rdperm/branching_graph.hpp"
#include "rdperm/experiments.hpp"
#include "rdperm/measures.hpp"
#include "rdperm/oracle.hpp"
#include "rdperm/posets.hpp"

namespace rdperm {

std::string CriterionResult::line() const {
  return "criterion " + std::to_string(id) + " " + (pass ? "PASS" : "FAIL") + " " + title + ": " + detail;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// ---------------------------------------------------------------------------

CriterionResult exact_combinatorics() {
  CriterionResult r{1, "exact combinatorics", true, ""};
  std::ostringstream d;
  for (int n = 1; n <= 8 && r.pass; ++n) {
    // every permutation round-trips through its path
    oracle::for_each_permutation(n, [&](const Permutation& s) {
      if (phi_inverse(phi_path(s)) != s) r.pass = false;
    });
    // every path from level 1 to level n is hit: count them and invert each
    std::uint64_t paths = 0;
    std::vector<RecordWord> path{RecordWord::all_ones(1)};
    std::function<void()> walk = [&] {
      if (path.back().size() == n) {
        ++paths;
        if (phi_path(phi_inverse(path)) != path) r.pass = false;
        return;
      }
      for (const auto& next : successors(path.back())) {
        path.push_back(next);
        walk();
        path.pop_back();
      }
    };
    walk();
    if (paths != factorial(n)) r.pass = false;
    BigInt total = 0;
    GraphLevel(n).for_each([&](const RecordWord& rho) {
      const BigInt dim = dimension(rho);
      total += dim;
      if (BigInt(static_cast<unsigned long>(oracle::enumerate_record_fiber(rho).size())) != dim) r.pass = false;
    });
    if (total != BigInt(static_cast<unsigned long>(factorial(n)))) r.pass = false;
    d << (n > 1 ? " " : "") << "|Gamma_" << n << "|=" << paths;
  }
  r.detail = "n<=8 round trips, fiber sizes and dimension sums " + std::string(r.pass ? "agree" : "DISAGREE") + ";" +
             d.str();
  return r;
}

// ---------------------------------------------------------------------------

ExactDistribution random_rd_measure(int n, RandomStream& rng) {
  std::map<RecordWord, Rational> weight;
  Rational total = 0;
  GraphLevel(n).for_each([&](const RecordWord& rho) {
    const auto w = rng.uniform_int(0, 9);
    weight[rho] = w;
    total += w;
  });
  if (total == 0) weight[RecordWord::all_ones(n)] = total = 1;
  ExactDistribution out(n);
  oracle::for_each_permutation(n, [&](const Permutation& s) {
    const RecordWord rho = records(s);
    Rational m = weight[rho] / total / Rational(dimension(rho));
    m.canonicalize();
    out.add(s, m);
  });
  return out;
}

std::string set_list(const std::vector<std::vector<int>>& sets) {
  std::string s;
  for (const auto& set : sets) {
    s += "{";
    for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + std::to_string(set[i]);
    s += "}";
  }
  return s;
}

CriterionResult rd_closure() {
  CriterionResult r{2, "record-dependence closure", true, ""};
  RandomStream rng(20'020);
  int measures = 0;
  bool closed = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;  // n = 2..7
    const auto m = random_rd_measure(n, rng);
    ++measures;
    if (!m.is_normalized() || !oracle::is_record_dependent(m)) closed = false;
    for (int k = 1; k < n; ++k)
      if (!oracle::is_record_dependent(oracle::oracle_projection(m, k))) closed = false;
  }
  std::vector<std::vector<int>> got;
  for (const auto& a : deletion_insertion_images(RecordWord::parse("101010"))) got.push_back(a.record_positions());
  const std::vector<std::vector<int>> quoted{{1}, {1, 2}, {1, 3}, {1, 3}, {1, 3, 4}, {1, 3, 5}, {1, 3, 5, 6}, {1, 3, 5, 7}};
  const bool list_ok = got == quoted;
  r.pass = closed && list_ok;
  r.detail = std::to_string(measures) + " random measures (n=2..7) projections " + (closed ? "RD" : "NOT RD") +
             "; images of B={1,3,5} at n=7: " + set_list(got) + (list_ok ? " match" : " differ from quoted ") +
             (list_ok ? "" : set_list(quoted));
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult position_laws() {
  CriterionResult r{3, "position distributions", true, ""};
  std::uint64_t checked = 0;
  for (int n = 1; n <= 8; ++n)
    GraphLevel(n).for_each([&](const RecordWord& rho) {
      for (const auto& [prefix, law] : oracle::oracle_position_laws(rho, 3)) {
        const auto got = prefix.empty() ? position_of_one_distribution(rho)
                                        : conditional_position_distribution(rho, OrderPrefix(prefix));
        ++checked;
        if (got != law) r.pass = false;
      }
    });
  r.detail = std::to_string(checked) + " (word, prefix) laws compared exactly, " +
             (r.pass ? "all equal" : "MISMATCH");
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult dual_algorithm() {
  CriterionResult r{4, "dual algorithm", true, ""};
  const std::int64_t N = 100'000;
  std::ostringstream d;
  int idx = 0;
  for (const auto& prefix : std::vector<std::vector<std::int64_t>>{{2}, {2, 5}}) {
    const OmegaPoint omega = OmegaPoint::alpha_p(AlphaSpec::finite(prefix), 1.0);
    d << (idx ? "; " : "") << omega.label() << " tv";
    std::optional<ExactDistribution> below;
    for (int n = 1; n <= 5; ++n) {
      const ExactDistribution m = exact_marginal(omega, n);
      if (!m.is_normalized() || !oracle::is_record_dependent(m)) r.pass = false;
      if (below && oracle::oracle_projection(m, n - 1) != *below) r.pass = false;
      const auto seed = RandomStream::child(44, static_cast<std::uint64_t>(10 * idx + n)).next();
      const auto emp = empirical_distribution(
          n, N, seed, [&](RandomStream& rng) { return sample_projection(omega, n, rng); });
      const double tv = total_variation(m, emp);
      const double bound = 3 * std::sqrt(static_cast<double>(factorial(n)) / static_cast<double>(N));
      if (!(tv <= bound)) r.pass = false;
      d << ' ' << fmt(tv) << (tv <= bound ? "<=" : ">") << fmt(bound);
      below = m;
    }
    ++idx;
  }
  r.detail = "n<=5 marginals RD and coherent " + std::string(r.pass ? "yes" : "NO") + "; " + d.str();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult boundary() {
  CriterionResult r{5, "boundary convergence", true, ""};
  ExperimentConfig apex;
  apex.kind = "boundary";
  apex.seed = 424242;
  apex.path = "sqrt";
  apex.k = 3;
  apex.exact = false;
  apex.samples = 100'000;
  apex.target = OmegaPoint::star();
  apex.sizes = {16, 64, 256, 1024};
  const auto a = boundary_convergence(apex);
  const bool a_ok = a.summary.at("tv_final") < 0.05 && a.summary.at("tv_worst_increase") <= 0.01;

  ExperimentConfig frozen;
  frozen.kind = "boundary";
  frozen.seed = 424242;
  frozen.path = "frozen:3,6";
  frozen.k = 3;
  frozen.exact = true;
  frozen.sizes = {6, 50, 500};
  const auto f = boundary_convergence(frozen);
  const bool f_ok = f.summary.at("tv_final") < 0.02 && f.summary.at("tv_worst_increase") <= 0;

  std::ostringstream d;
  for (const auto* rep : {&a, &f}) {
    d << (rep == &a ? "" : "; ") << rep->omega << " tv";
    for (const auto& row : rep->rows)
      if (row.statistic == "tv") d << ' ' << row.n << ':' << fmt(row.value);
  }
  r.pass = a_ok && f_ok;
  r.detail = d.str() + " (ceilings 0.05 / 0.02)";
  return r;
}

// ---------------------------------------------------------------------------

ExperimentConfig lln_config(OmegaPoint omega, std::vector<std::int64_t> sizes) {
  ExperimentConfig c;
  c.omega = std::move(omega);
  c.sizes = std::move(sizes);
  c.replicates = 200;
  c.seed = 1;
  return c;
}

OmegaPoint square(double p) { return OmegaPoint::alpha_p(AlphaSpec::with_rule({}, TailRule::square), p); }

CriterionResult lln() {
  CriterionResult r{6, "law of large numbers proxies", true, ""};
  const auto a = lln_position_of_max(lln_config(square(1.0), {10, 100, 1000, 10000}));
  const double fa = a.summary.at("fraction_ratio_at_least_0.9");
  const auto b = lln_position_of_max(lln_config(OmegaPoint::star(), {10, 100, 1000, 10000}));
  const double fb = b.summary.at("fraction_running_min_at_most_0.05");
  auto cc = lln_config(OmegaPoint::alpha_p(AlphaSpec::finite({2, 5, 10, 17, 26}), 1.0), {100, 1000, 10000});
  cc.kmax = 5;
  const double fc = nonrecord_positions(cc).summary.at("fraction_all_at_slots");
  r.pass = fa >= 0.95 && fb >= 0.95 && fc == 1.0;
  r.detail = "(a) square p=1 ratio>=0.9 in " + fmt(fa) + " (need 0.95); (b) star running min<=0.05 in " + fmt(fb) +
             " (need 0.95); (c) non-records at alpha_k+1 in " + fmt(fc) + " (need 1)";
  return r;
}

CriterionResult record_growth_check() {
  CriterionResult r{7, "record growth", true, ""};
  const double fa =
      record_growth(lln_config(square(0.5), {100, 1000, 10000})).summary.at("fraction_ratio_in_band_0.9_1.1");
  const double fb =
      record_growth(lln_config(OmegaPoint::star(), {100, 1000, 10000})).summary.at("fraction_ratio_in_band_0.7_1.3");
  r.pass = fa >= 0.9 && fb >= 0.9;
  r.detail = "square p=1/2 |R|/(np) in [0.9,1.1] for " + fmt(fa) + " (need 0.9); star |R|/ln n in [0.7,1.3] for " +
             fmt(fb) + " (need 0.9)";
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult structures() {
  CriterionResult r{8, "causal sets and Young-Fibonacci", true, ""};
  std::vector<std::string> fails;
  std::vector<std::size_t> c{0};
  for (int n = 1; n <= 20; ++n) c.push_back(yf_level(n).size());
  bool fib = c[1] == 1 && c[2] == 2;
  for (std::size_t n = 3; n <= 20; ++n) fib = fib && c[n] == c[n - 1] + c[n - 2];
  if (!fib) fails.push_back("level counts");

  std::set<std::string> level4, succ;
  for (const auto& w : yf_level(4)) level4.insert(w.to_string());
  for (const auto& w : yf_successors(FibWord::parse("2212"))) succ.insert(w.to_string());
  if (level4 != std::set<std::string>{"1111", "211", "121", "112", "22"}) fails.push_back("level 4");
  if (succ != std::set<std::string>{"12212", "21212", "22112", "2222"}) fails.push_back("2212 successors");

  const auto yf = differential_poset_check(GradedFamily::young_fibonacci, 8);
  if (!yf.ok()) fails.push_back("YF differential");
  const auto rec = differential_poset_check(GradedFamily::records, 5, 1);
  if (rec.ok()) fails.push_back("no record-graph witness");

  if (!order_invariance_check(CausalSetSpec(AlphaSpec::finite({2})), 4)) fails.push_back("invariance (2)");
  if (!order_invariance_check(CausalSetSpec(AlphaSpec::finite({2, 4})), 6)) fails.push_back("invariance (2,4)");

  int windows = 0;
  for (const auto& alpha : std::vector<std::vector<std::int64_t>>{{}, {1}, {2}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 4, 5}, {1, 3, 6}}) {
    const CausalSetSpec spec(AlphaSpec::finite(alpha));
    for (int n = 1; n <= 7; ++n) {
      const auto order = causal_order_window(spec, n);
      const RecordWord target = RecordWord::from_positions(n, spec.beta(n));
      bool ok = true;
      oracle::for_each_permutation(n, [&](const Permutation& s) {
        if (is_natural_extension(order, s) != (records(s) == target)) ok = false;
      });
      ++windows;
      if (!ok) fails.push_back("duality alpha size " + std::to_string(alpha.size()) + " n=" + std::to_string(n));
    }
  }
  r.pass = fails.empty();
  std::ostringstream d;
  d << "YF counts to level 20 " << (fib ? "Fibonacci" : "WRONG") << " (c20=" << c[20] << "); YF differential to 8: "
    << yf.violations.size() << " violations; record-graph witness: "
    << (rec.ok() ? std::string("none") : rec.violations.front().to_string()) << "; duality on " << windows
    << " windows";
  for (const auto& f : fails) d << "; failed " << f;
  r.detail = d.str();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return exact_combinatorics();
    case 2: return rd_closure();
    case 3: return position_laws();
    case 4: return dual_algorithm();
    case 5: return boundary();
    case 6: return lln();
    case 7: return record_growth_check();
    case 8: return structures();
  }
  throw std::out_of_range("criterion id must be 1..8");
}

std::vector<CriterionResult> run_all_criteria() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace rdperm
