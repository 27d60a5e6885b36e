#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "reclab/cfrac.hpp"
#include "reclab/combinatorics.hpp"
#include "reclab/counterexample.hpp"
#include "reclab/rational.hpp"
#include "reclab/recurrence.hpp"

namespace reclab {

using json = nlohmann::ordered_json;

/// "num/den".
json to_json(const Rational& x);
/// Decimal-string quotients.
json to_json(const ContinuedFraction& cf);
ContinuedFraction cf_from_json(const json& j);

/// {"N", "in", "out", "unknown", "max_gap_in"} for an exactly decided set:
/// out is the complement in {1..N}, unknown is empty.
json window_json(const WindowSet& s);
json window_json(const ReturnWindow& w);

json to_json(const GapCertificate& cert);
json to_json(const SpotCheckReport& r);
json to_json(const Dichotomy& d);
json to_json(const ColorabilityResult& r);
json to_json(const TheoremBConfig& c);

/// CSV table "n,status" with status in {in, out, unknown}.
void write_window_csv(std::ostream& out, const ReturnWindow& w);
void write_window_csv(std::ostream& out, const WindowSet& s);

/// Re-evaluates every link of a serialized transcript from its lhs/rhs
/// strings; true when each recomputed verdict matches the recorded one.
bool reverify_transcript(const json& transcript);

}  // namespace reclab
