#pragma once

#include <string>

#include "classify.hpp"

namespace dca {

// Re-verifies a violation witness against the raw instance, using only
// table lookups and hull geometry; none of the checker search logic is
// involved, so a passing replay is independent evidence. Exactly one of
// set/fn must be provided, matching the checked instance. On failure a
// short reason is written to *why when given.
bool replay_witness(const ViolationWitness& w, const LatticeSet* set,
                    const DiscreteFunction* fn, std::string* why = nullptr);

// Replays a full report: a true verdict passes vacuously; a false verdict
// must carry a witness that replays, including the side conditions the
// property imposes on its witnesses (pair distance for the distance-gated
// modes, domain-level certificates for domain failures).
bool replay_report(const CheckReport& rep, const LatticeSet* set,
                   const DiscreteFunction* fn, std::string* why = nullptr);

}  // namespace dca
