#include "rdperm/boundary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rdperm/branching_graph.hpp"
#include "rdperm/errors.hpp"
#include "rdperm/measures.hpp"

namespace rdperm {

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("path spec: bad integer '" + std::string(s) + "'");
  return v;
}

int isqrt(int n) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

RecordWord ones_then_zeros(int n, int ones) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < std::min(ones, n); ++i) bits[static_cast<std::size_t>(i)] = 1;
  return RecordWord(std::move(bits));
}

}  // namespace

PathSpec PathSpec::parse(std::string_view text) {
  PathSpec spec;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "ones") {
    spec.kind = Kind::all_ones;
  } else if (head == "sqrt") {
    spec.kind = Kind::sqrt_prefix;
  } else if (head == "half") {
    spec.kind = Kind::half_zeros;
  } else if (head == "drift") {
    spec.kind = Kind::drifting_zero;
  } else if (head == "prefix") {
    spec.kind = Kind::ones_prefix;
    spec.c = parse_int(arg);
    if (spec.c < 1) throw std::invalid_argument("path spec: prefix length must be >= 1");
  } else if (head == "frozen") {
    spec.kind = Kind::frozen_zeros;
    std::size_t start = 0;
    while (start < arg.size()) {
      const auto comma = arg.find(',', start);
      spec.zeros.push_back(parse_int(arg.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    std::sort(spec.zeros.begin(), spec.zeros.end());
    spec.zeros.erase(std::unique(spec.zeros.begin(), spec.zeros.end()), spec.zeros.end());
    if (!spec.zeros.empty() && spec.zeros.front() < 2) throw std::invalid_argument("path spec: position 1 is always a record");
  } else {
    throw std::invalid_argument("unknown path family '" + std::string(text) + "'");
  }
  return spec;
}

std::string PathSpec::to_string() const {
  switch (kind) {
    case Kind::all_ones: return "ones";
    case Kind::sqrt_prefix: return "sqrt";
    case Kind::half_zeros: return "half";
    case Kind::drifting_zero: return "drift";
    case Kind::ones_prefix: return "prefix:" + std::to_string(c);
    case Kind::frozen_zeros: {
      std::string s = "frozen:";
      for (std::size_t i = 0; i < zeros.size(); ++i) s += (i ? "," : "") + std::to_string(zeros[i]);
      return s;
    }
  }
  return "?";
}

RecordWord path_word(const PathSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("path_word: n must be >= 1");
  switch (spec.kind) {
    case PathSpec::Kind::all_ones: return RecordWord::all_ones(n);
    case PathSpec::Kind::sqrt_prefix: return ones_then_zeros(n, isqrt(n));
    case PathSpec::Kind::half_zeros: return ones_then_zeros(n, std::max(1, n / 2));
    case PathSpec::Kind::drifting_zero: return ones_then_zeros(n, std::max(1, n - 1));
    case PathSpec::Kind::ones_prefix: return ones_then_zeros(n, spec.c);
    case PathSpec::Kind::frozen_zeros: {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 1);
      for (int z : spec.zeros)
        if (z <= n) bits[static_cast<std::size_t>(z - 1)] = 0;
      return RecordWord(std::move(bits));
    }
  }
  throw std::invalid_argument("path_word: unknown family");
}

std::vector<RecordWord> path_prefix(const PathSpec& spec, int depth) {
  std::vector<RecordWord> out;
  out.reserve(static_cast<std::size_t>(depth));
  for (int n = 1; n <= depth; ++n) out.push_back(path_word(spec, n));
  return out;
}

std::string LimitClass::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::star: os << "star"; break;
    case Kind::alpha_p: os << omega->label(); break;
    case Kind::undetermined: os << "undetermined"; break;
  }
  os << " p1=" << p1 << " p2=" << p2 << " horizon=" << settled_horizon;
  return os.str();
}

LimitClass classify_limit(std::span<const RecordWord> path, ClassifyOptions options) {
  if (path.empty()) throw std::invalid_argument("classify_limit: empty path");
  validate_path(path);
  const int N = static_cast<int>(path.size());
  if (path.front().size() != 1) throw InvalidPath("classify_limit: path must start at level 1");

  LimitClass out;
  const RecordWord& last = path.back();
  out.p1 = reduced_L_real(last);

  const int window = std::min(options.trend_window, N);
  bool non_increasing = true;
  for (int n = N - window + 1; n < N; ++n)
    if (reduced_L_real(path[static_cast<std::size_t>(n)]) > reduced_L_real(path[static_cast<std::size_t>(n - 1)]))
      non_increasing = false;
  if (out.p1 < options.threshold && non_increasing) {
    out.kind = LimitClass::Kind::star;
    out.omega = OmegaPoint::star();
    return out;
  }

  const int h = N / 4;
  out.settled_horizon = h;
  for (int n = (N + 1) / 2; n <= N; ++n) {
    const auto bits = path[static_cast<std::size_t>(n - 1)].bits();
    if (!std::equal(bits.begin(), bits.begin() + std::min(h, n), last.bits().begin())) return out;
  }

  std::vector<std::int64_t> alpha;
  out.p2 = 1;
  for (int i = 2; i <= h; ++i)
    if (!last.is_record(i)) {
      alpha.push_back(i - 1);
      if (i > 2) out.p2 *= 1.0 - 1.0 / (i - 1);
    }
  const double p = std::clamp(out.p1 / out.p2, 0.0, 1.0);
  if (!(p > 0)) {
    out.kind = LimitClass::Kind::star;
    out.omega = OmegaPoint::star();
    return out;
  }
  out.kind = LimitClass::Kind::alpha_p;
  out.omega = OmegaPoint::alpha_p(AlphaSpec::finite(std::move(alpha)), p);
  return out;
}

}  // namespace rdperm
