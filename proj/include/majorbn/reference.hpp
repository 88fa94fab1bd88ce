#pragma once

#include "majorbn/network.hpp"

namespace majorbn {

// Name of the class variable in the reference model.
inline constexpr const char* kReferenceTarget = "major";

// The shipped counseling model: a 19-node star in which the academic major
// is the sole parent of all 18 questionnaire factors. Structure and factor
// catalog follow the published survey; the probabilities are a synthetic
// parameterization (the original questionnaire data was never published),
// chosen so that exact-inference accuracy on data drawn from the model
// lands in the 65-80% band. data/reference_major.bn is the canonical
// serialization of this network.
Network reference_network();

}  // namespace majorbn
