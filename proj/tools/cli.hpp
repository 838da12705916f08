#pragma once

// Command-line front end: configuration parsing, mode dispatch, artifact
// output. Kept apart from main() so the whole surface is testable
// in-process.
//
// Modes and artifacts (written to --out):
//   solve         trace.csv + summary.json
//   converge      orders.csv
//   perturb       stability.json
//   verify-cheb   bounds.json
//   verify-linear estimates.json
//   energy        energy.csv
//
// Exit codes: 0 pass, 1 verification failure, 2 usage/config error.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballbeam/verification.hpp"

namespace ballbeam::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Built-in defaults; a config file and --set overrides are merged on top.
nlohmann::json default_config();

// Reads the config file (empty path = defaults only), deep-merges it onto
// the defaults, then applies key=value overrides. Override keys use dotted
// paths ("time.n"); a handful of common bare keys ("n", "seed", ...) are
// aliases. Values parse as JSON scalars, falling back to strings.
nlohmann::json load_config(const std::string& path,
                           const std::vector<std::string>& overrides);

// FNV-1a 64-bit over the serialized effective config, as fixed-width hex.
std::string config_digest(const nlohmann::json& cfg);

SchemeConfig build_scheme_config(const nlohmann::json& cfg);
ManufacturedCase build_manufactured(const nlohmann::json& cfg);

// Runs one mode against an effective config; writes artifacts into out_dir.
int dispatch(const std::string& mode, const nlohmann::json& cfg,
             const std::string& out_dir);

// Full argv entry point (flag parsing + error-to-exit-code mapping).
int run(int argc, const char* const* argv);

}  // namespace ballbeam::cli
