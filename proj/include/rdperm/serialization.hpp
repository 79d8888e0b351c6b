#pragma once

#include <istream>
#include <string>

#include "rdperm/alpha.hpp"
#include "rdperm/experiments.hpp"

namespace rdperm {

/// JSON record for omega:
///   {"kind":"star"}
///   {"kind":"alpha_p","alpha_prefix":[2,5,9],"tail":"infinite","p":0.75}
/// A rule tail is "square" or "pow2", with optional integer fields
/// "index_offset" and "value_shift". Throws SpecError on malformed input.
std::string omega_to_json(const OmegaPoint& omega);
OmegaPoint omega_from_json(const std::string& text);

/// Experiment configuration as one JSON object. Fields: kind, omega, sizes,
/// replicates, seed, output, thresholds, execution ("parallel" | "serial"),
/// kmax, path, k, exact, samples, target, probes, horizon. Only kind, sizes
/// and (except for boundary) omega are required; unknown fields are an error.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(std::istream& in);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace rdperm
