#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowlift/blowup.hpp"
#include "chowlift/config.hpp"
#include "chowlift/murre.hpp"

namespace chowlift {

// A variety built from its spec, with its Chow-Kunneth decomposition, the
// top-level chain of blow-up stages (innermost first), and the decomposition
// of the datum under that chain.
struct BuiltVariety {
  DatumPtr datum;
  CKDecomposition ck;
  std::vector<BlowupDatum> stages;
  std::optional<CKDecomposition> ck_below;
};

// Builds the datum bottom-up and assembles the decomposition: standard for
// cellular leaves, tensored over products, averaged over quotients, lifted
// through every blow-up stage.
BuiltVariety build_variety(const VarietySpec& spec);

struct RunResult {
  int exit_code = 0;  // 0 all-pass, 1 verification failure
  std::string report;
};

RunResult run(const RunConfig& config);

// Config echo plus datum summary, no checks.
std::string describe(const RunConfig& config);

}  // namespace chowlift
