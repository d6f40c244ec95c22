// detail.hpp - helpers shared by the subcommands and the reproduce driver

#pragma once

#include <cstdint>
#include <string>

#include "harness.hpp"
#include "qlab/mitigation/dd.hpp"

namespace qlab::harness::detail {

// Three-mode bath used when no bath file is given.
BathSpec default_bath();

// Standard metadata: tool, version, subcommand, seed, then the sorted config echo.
void stamp(ResultTable& t, const ValidatedConfig& cfg);

// Seed of stream `index` derived from `seed`.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace qlab::harness::detail
