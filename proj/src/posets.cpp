#include "rdperm/posets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "rdperm/branching_graph.hpp"
#include "rdperm/errors.hpp"

namespace rdperm {

// ---------------------------------------------------------------------------
// causal set

std::vector<int> CausalSetSpec::slots(int n) const {
  std::vector<int> out;
  for (std::int64_t k = 1;; ++k) {
    const auto a = alpha_.at(k);
    if (!a || *a + 1 > n) break;
    out.push_back(static_cast<int>(*a + 1));
  }
  return out;
}

std::vector<int> CausalSetSpec::beta(int n) const {
  const auto s = slots(n);
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

CausalOrder::CausalOrder(int n, std::vector<std::pair<int, int>> generators)
    : n_(n), generators_(std::move(generators)) {
  if (n < 1) throw std::invalid_argument("causal order: n must be >= 1");
  const auto N = static_cast<std::size_t>(n);
  less_.assign(N, std::vector<bool>(N, false));
  for (auto [i, j] : generators_) {
    if (i < 1 || j < 1 || i > n || j > n || i == j) throw std::invalid_argument("causal order: bad generator");
    less_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = true;
  }
  // transitive closure
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < N; ++i)
      if (less_[i][k])
        for (std::size_t j = 0; j < N; ++j)
          if (less_[k][j]) less_[i][j] = true;
  preds_.assign(N, {});
  for (std::size_t j = 0; j < N; ++j) {
    if (less_[j][j]) throw std::invalid_argument("causal order: generators contain a cycle");
    for (std::size_t i = 0; i < N; ++i)
      if (less_[i][j]) preds_[j].push_back(static_cast<int>(i) + 1);
  }
}

bool CausalOrder::precedes(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) throw std::out_of_range("causal order: element outside the window");
  return less_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

CausalOrder causal_order_window(const CausalSetSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("causal_order_window: n must be >= 1");
  const auto beta = spec.beta(n);
  std::vector<std::pair<int, int>> gens;
  for (std::size_t k = 1; k < beta.size(); ++k) gens.emplace_back(beta[k - 1], beta[k]);
  // slot s = alpha_i + 1 sits below the largest beta under s (1 is always a beta)
  for (int s : spec.slots(n)) {
    const auto it = std::lower_bound(beta.begin(), beta.end(), s);
    gens.emplace_back(s, *(it - 1));
  }
  return CausalOrder(n, std::move(gens));
}

bool is_natural_extension(const CausalOrder& order, const Permutation& sigma) {
  if (sigma.size() != order.size()) throw std::invalid_argument("is_natural_extension: size mismatch");
  for (auto [i, j] : order.generators())
    if (sigma(i) >= sigma(j)) return false;
  return true;
}

namespace {

// calls visit with the letter sequence e_1, e_2, ... of every extension
void for_each_extension(const CausalOrder& order, std::uint64_t budget,
                        const std::function<void(const std::vector<int>&)>& visit) {
  const int n = order.size();
  std::vector<int> missing(static_cast<std::size_t>(n));  // unplaced predecessors
  for (int j = 1; j <= n; ++j) missing[static_cast<std::size_t>(j - 1)] = static_cast<int>(order.predecessors(j).size());
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j)
    for (int i : order.predecessors(j)) succ[static_cast<std::size_t>(i - 1)].push_back(j);
  std::vector<int> seq;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::uint64_t count = 0;
  std::function<void()> rec = [&] {
    if (static_cast<int>(seq.size()) == n) {
      if (++count > budget) throw BudgetExceeded("natural extensions", count, budget);
      visit(seq);
      return;
    }
    for (int j = 1; j <= n; ++j) {
      const auto J = static_cast<std::size_t>(j - 1);
      if (used[J] || missing[J] != 0) continue;
      used[J] = true;
      seq.push_back(j);
      for (int s : succ[J]) --missing[static_cast<std::size_t>(s - 1)];
      rec();
      for (int s : succ[J]) ++missing[static_cast<std::size_t>(s - 1)];
      seq.pop_back();
      used[J] = false;
    }
  };
  rec();
}

}  // namespace

std::vector<Permutation> natural_extensions(const CausalOrder& order, std::uint64_t budget) {
  std::vector<Permutation> out;
  for_each_extension(order, budget, [&](const std::vector<int>& seq) {
    std::vector<int> word(seq.size());
    for (std::size_t t = 0; t < seq.size(); ++t) word[static_cast<std::size_t>(seq[t] - 1)] = static_cast<int>(t) + 1;
    out.emplace_back(std::move(word));
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool order_invariance_check(const CausalSetSpec& spec, int n, std::uint64_t budget) {
  const CausalOrder order = causal_order_window(spec, n);
  // stem -> number of extensions starting with it, for every stem length
  std::map<std::vector<int>, std::uint64_t> stems;
  for_each_extension(order, budget, [&](const std::vector<int>& seq) {
    for (std::size_t k = 1; k <= seq.size(); ++k) ++stems[std::vector<int>(seq.begin(), seq.begin() + static_cast<long>(k))];
  });
  std::map<std::vector<int>, std::uint64_t> by_set;
  for (const auto& [stem, count] : stems) {
    std::vector<int> set = stem;
    std::sort(set.begin(), set.end());
    auto [it, inserted] = by_set.emplace(set, count);
    if (!inserted && it->second != count) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Young-Fibonacci graph

FibWord::FibWord(std::string digits) : digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("FibWord: empty word");
  for (char c : digits_) {
    if (c != '1' && c != '2') throw std::invalid_argument("FibWord: digits must be 1 or 2");
    weight_ += c - '0';
  }
}

std::vector<FibWord> yf_successors(const FibWord& w) {
  const std::string& d = w.digits();
  const std::size_t lead = d.find('1') == std::string::npos ? d.size() : d.find('1');
  std::vector<FibWord> out;
  for (std::size_t slot = 0; slot <= lead; ++slot) out.emplace_back(d.substr(0, slot) + "1" + d.substr(slot));
  if (lead < d.size()) {
    std::string up = d;
    up[lead] = '2';
    out.emplace_back(std::move(up));
  }
  return out;
}

std::vector<FibWord> yf_level(int n) {
  if (n < 1) throw std::invalid_argument("yf_level: n must be >= 1");
  if (n > 30) throw std::invalid_argument("yf_level: level too large to list");
  std::vector<FibWord> out;
  std::string cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (char c : {'1', '2'}) {
      if (c - '0' > left) continue;
      cur.push_back(c);
      rec(left - (c - '0'));
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

void export_yf_level(std::ostream& out, int n) {
  for (const auto& w : yf_level(n)) {
    out << w.to_string() << " ->";
    for (const auto& s : yf_successors(w)) out << ' ' << s.to_string();
    out << '\n';
  }
}

std::string DifferentialViolation::to_string() const {
  const std::string name = vertex.empty() ? "root" : vertex;
  if (kind == Kind::degree)
    return "level " + std::to_string(level) + ": " + name + " has " + std::to_string(up) + " upper and " +
           std::to_string(down) + " lower covers";
  return "level " + std::to_string(level) + ": " + name + " and " + other + " share " + std::to_string(up) +
         " upper and " + std::to_string(down) + " lower covers";
}

namespace {

// levels[n] lists vertex labels; up[n][v] the indices of v's covers in level n+1
struct GradedWindow {
  std::vector<std::vector<std::string>> levels;
  std::vector<std::vector<std::vector<std::size_t>>> up;
};

GradedWindow build_window(GradedFamily family, int top) {
  GradedWindow g;
  g.levels.push_back({""});
  for (int n = 1; n <= top; ++n) {
    std::vector<std::string> level;
    if (family == GradedFamily::young_fibonacci) {
      for (const auto& w : yf_level(n)) level.push_back(w.to_string());
    } else {
      GraphLevel(n).for_each([&](const RecordWord& r) { level.push_back(r.to_string()); });
    }
    g.levels.push_back(std::move(level));
  }
  for (int n = 0; n < top; ++n) {
    const auto& next = g.levels[static_cast<std::size_t>(n + 1)];
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < next.size(); ++i) index.emplace(next[i], i);
    std::vector<std::vector<std::size_t>> adj;
    for (const auto& v : g.levels[static_cast<std::size_t>(n)]) {
      std::vector<std::string> covers;
      if (n == 0) {
        covers = {"1"};
      } else if (family == GradedFamily::young_fibonacci) {
        for (const auto& s : yf_successors(FibWord(v))) covers.push_back(s.to_string());
      } else {
        for (const auto& s : successors(RecordWord::parse(v))) covers.push_back(s.to_string());
      }
      std::set<std::size_t> idx;
      for (const auto& c : covers) idx.insert(index.at(c));
      adj.emplace_back(idx.begin(), idx.end());
    }
    g.up.push_back(std::move(adj));
  }
  return g;
}

std::size_t common(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t c = 0;
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

}  // namespace

DifferentialReport differential_poset_check(GradedFamily family, int max_level, std::size_t max_violations) {
  if (max_level < 0) throw std::invalid_argument("differential_poset_check: max_level must be >= 0");
  if (max_level > (family == GradedFamily::records ? 12 : 24))
    throw std::invalid_argument("differential_poset_check: max_level beyond the supported bound");
  const GradedWindow g = build_window(family, max_level + 1);
  // down[n][v]: covers of v in level n-1
  std::vector<std::vector<std::vector<std::size_t>>> down(static_cast<std::size_t>(max_level + 1));
  down[0].assign(1, {});
  for (int n = 1; n <= max_level; ++n) {
    auto& d = down[static_cast<std::size_t>(n)];
    d.assign(g.levels[static_cast<std::size_t>(n)].size(), {});
    const auto& up = g.up[static_cast<std::size_t>(n - 1)];
    for (std::size_t u = 0; u < up.size(); ++u)
      for (std::size_t v : up[u]) d[v].push_back(u);
  }

  DifferentialReport rep{family, max_level, 0, 0, {}};
  auto record = [&](DifferentialViolation v) {
    if (rep.violations.size() < max_violations) rep.violations.push_back(std::move(v));
  };
  for (int n = 0; n <= max_level; ++n) {
    const auto N = static_cast<std::size_t>(n);
    const auto& names = g.levels[N];
    const auto& up = g.up[N];
    const auto& dn = down[N];
    for (std::size_t a = 0; a < names.size(); ++a) {
      ++rep.vertices_checked;
      const int u = static_cast<int>(up[a].size());
      const int d = static_cast<int>(dn[a].size());
      if (u != d + 1) record({DifferentialViolation::Kind::degree, n, names[a], "", u, d});
      for (std::size_t b = a + 1; b < names.size(); ++b) {
        ++rep.pairs_checked;
        const int cu = static_cast<int>(common(up[a], up[b]));
        const int cd = static_cast<int>(common(dn[a], dn[b]));
        if (cu != cd) record({DifferentialViolation::Kind::common_neighbours, n, names[a], names[b], cu, cd});
      }
    }
  }
  return rep;
}

}  // namespace rdperm
