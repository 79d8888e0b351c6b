#include "rdperm/serialization.hpp"

#include <iterator>
#include <set>

#include "json.hpp"
#include "rdperm/errors.hpp"

namespace rdperm {

using nlohmann::json;

namespace {

TailRule rule_from_name(const std::string& name) {
  if (name == "square") return TailRule::square;
  if (name == "pow2") return TailRule::power_of_two;
  throw SpecError("unknown tail rule '" + name + "'");
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw SpecError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw SpecError(what + ": unknown field '" + key + "'");
}

json omega_json(const OmegaPoint& omega) {
  if (omega.is_star()) return {{"kind", "star"}};
  const auto& [alpha, p] = omega.pair();
  json j = {{"kind", "alpha_p"}, {"alpha_prefix", alpha.prefix()}, {"p", p}};
  if (alpha.has_infinite_tail()) {
    j["tail"] = "infinite";
  } else {
    const auto& t = *alpha.tail();
    j["tail"] = rule_name(t.rule);
    if (t.index_offset != 0) j["index_offset"] = t.index_offset;
    if (t.value_shift != 0) j["value_shift"] = t.value_shift;
  }
  return j;
}

OmegaPoint omega_of(const json& j) {
  only_keys(j, {"kind", "alpha_prefix", "tail", "p", "index_offset", "value_shift"}, "omega");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "star") {
    if (j.size() != 1) throw SpecError("omega: star takes no other fields");
    return OmegaPoint::star();
  }
  if (kind != "alpha_p") throw SpecError("omega: unknown kind '" + kind + "'");
  const auto prefix = j.value("alpha_prefix", std::vector<std::int64_t>{});
  const auto tail = j.value("tail", std::string("infinite"));
  const double p = j.value("p", 1.0);
  if (!(p > 0 && p <= 1)) throw SpecError("omega: p must lie in (0, 1]");
  if (tail == "infinite") {
    if (j.contains("index_offset") || j.contains("value_shift"))
      throw SpecError("omega: offsets apply to rule tails only");
    return OmegaPoint::alpha_p(AlphaSpec::finite(prefix), p);
  }
  return OmegaPoint::alpha_p(AlphaSpec::with_rule(prefix, rule_from_name(tail), j.value("index_offset", std::int64_t{0}),
                                                  j.value("value_shift", std::int64_t{0})),
                             p);
}

template <typename F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string omega_to_json(const OmegaPoint& omega) { return omega_json(omega).dump(); }

OmegaPoint omega_from_json(const std::string& text) {
  return guarded([&] { return omega_of(json::parse(text)); });
}

ExperimentConfig config_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    only_keys(j,
              {"kind", "omega", "sizes", "replicates", "seed", "output", "thresholds", "execution", "kmax", "path", "k",
               "exact", "samples", "target", "probes", "horizon"},
              "config");
    ExperimentConfig c;
    c.kind = j.at("kind").get<std::string>();
    if (j.contains("omega")) c.omega = omega_of(j.at("omega"));
    else if (c.kind != "boundary") throw SpecError("config: omega is required");
    c.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
    c.replicates = j.value("replicates", c.replicates);
    c.seed = j.value("seed", c.seed);
    c.output = j.value("output", c.output);
    c.thresholds = j.value("thresholds", c.thresholds);
    const auto exec = j.value("execution", std::string("parallel"));
    if (exec == "parallel") c.execution = Execution::parallel;
    else if (exec == "serial") c.execution = Execution::serial;
    else throw SpecError("config: execution must be parallel or serial");
    c.kmax = j.value("kmax", c.kmax);
    c.path = j.value("path", c.path);
    c.k = j.value("k", c.k);
    c.exact = j.value("exact", c.exact);
    c.samples = j.value("samples", c.samples);
    if (j.contains("target")) c.target = omega_of(j.at("target"));
    c.probes = j.value("probes", c.probes);
    c.horizon = j.value("horizon", c.horizon);
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("config: ") + e.what());
    }
    return c;
  });
}

ExperimentConfig load_config(std::istream& in) {
  return config_from_json(std::string(std::istreambuf_iterator<char>(in), {}));
}

std::string config_to_json(const ExperimentConfig& c) {
  json j = {{"kind", c.kind},
            {"omega", omega_json(c.omega)},
            {"sizes", c.sizes},
            {"replicates", c.replicates},
            {"seed", c.seed},
            {"output", c.output},
            {"thresholds", c.thresholds},
            {"execution", c.execution == Execution::parallel ? "parallel" : "serial"},
            {"kmax", c.kmax},
            {"path", c.path},
            {"k", c.k},
            {"exact", c.exact},
            {"samples", c.samples},
            {"probes", c.probes},
            {"horizon", c.horizon}};
  if (c.target) j["target"] = omega_json(*c.target);
  return j.dump(2);
}

}  // namespace rdperm
