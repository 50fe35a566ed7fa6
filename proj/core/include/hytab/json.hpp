#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "hytab/bulldoze.hpp"
#include "hytab/extract.hpp"
#include "hytab/kripke.hpp"
#include "hytab/tableau.hpp"

namespace hytab {

using Json = nlohmann::ordered_json;

Json model_json(const KripkeModel& m);
// {"variant", "model", "urfather_map", "r_e", "closure_kind"}
Json extraction_json(const ExtractedModel& m);
// {"variant", "base", "w_minus", "clusters": [{"index", "members"}], "truncation"?}
Json certificate_json(const BulldozedModel& bm, std::optional<std::size_t> truncate_copies = std::nullopt);
// {"calculus", "root", "nodes": [{"entries", "status", "witness", "children"}]}
Json trace_json(const Tableau& t);

}  // namespace hytab
