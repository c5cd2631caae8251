#pragma once

#include <json.hpp>

#include "chsh/mc.hpp"
#include "chsh/realizability.hpp"
#include "chsh/settings.hpp"
#include "chsh/two_valued.hpp"
#include "chsh/unifying.hpp"

namespace chsh {

using json = nlohmann::json;

/// Numbers serialize as doubles; exact values additionally matter only on the
/// way in, where a JSON string ("1/8", "0.125") parses to an exact rational
/// and a JSON number stays in float mode.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, const std::string& context);

/// Family schema:
///   {"tables": {"11": {"pp":r,"pm":r,"mp":r,"mm":r}, "12":..., "21":..., "22":...},
///    "gate_probs": {"11":r, ...}}   (gate_probs optional, default uniform)
json family_to_json(const CondTableFamily& family);
CondTableFamily family_from_json(const json& j);

json chsh_report_to_json(const ChshReport& report);
json marginal_consistency_to_json(const MarginalConsistencyReport& report);

json unifying_space_to_json(const UnifyingSpace& us);
json pi_report_to_json(const PiReport& report);

json two_valued_report_to_json(const TwoValuedSpace& tvs);

json estimate_to_json(const McEstimate& est);
json mc_chsh_to_json(const McChshReport& report);

json feasibility_to_json(const Feasibility& f);
json remark_gap_to_json(const RemarkGapReport& report);

} // namespace chsh
