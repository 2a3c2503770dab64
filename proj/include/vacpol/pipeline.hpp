#pragma once
#include <string>

#include "vacpol/config.hpp"

//! Pipeline stages behind the CLI subcommands. Each stage writes its
//! artifacts (data file + JSON sidecar carrying the tool version and config
//! hash) under out_dir, keyed by the hash of the config keys it consumes;
//! an existing artifact with a matching hash is reused without recompute.

namespace vacpol::cli {

struct StageResult {
  std::string artifact;  //! primary artifact path
  std::string sidecar;   //! JSON sidecar path
  bool cache_hit = false;
};

//! spectral density sampled on [a,b] -> CSV (x, y [, channels...])
StageResult stage_density(const RunConfig &cfg);

//! decomposition of the density artifact -> JSON.
//! Throws vacpol::ValidationError naming the density stage when the
//! upstream artifact is missing.
StageResult stage_decompose(const RunConfig &cfg);

//! cutoff extrapolation across lambda0_list -> JSON; needs one
//! decomposition artifact per lambda0
StageResult stage_extrapolate(const RunConfig &cfg);

//! dilatation flow on the locked w5 profile -> JSON + trajectory CSV
StageResult stage_flow(const RunConfig &cfg);

//! human-readable summary of whatever artifacts exist -> text file
StageResult stage_report(const RunConfig &cfg);

} // namespace vacpol::cli
