#pragma once

#include "homsynth/abp.hpp"
#include "homsynth/analysis.hpp"
#include "homsynth/circuit.hpp"
#include "homsynth/decomposition.hpp"
#include "homsynth/errors.hpp"
#include "homsynth/field.hpp"
#include "homsynth/graph.hpp"
#include "homsynth/io.hpp"
#include "homsynth/oracle.hpp"
#include "homsynth/parse_tree.hpp"
#include "homsynth/polynomial.hpp"
#include "homsynth/synth.hpp"
#include "homsynth/transform.hpp"
#include "homsynth/variable.hpp"
#include "homsynth/widths.hpp"

namespace homsynth {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace homsynth
