#include "hytab/json.hpp"

namespace hytab {

Json extraction_json(const ExtractedModel& m) {
  Json j;
  j["variant"] = std::string(to_string(m.variant));
  j["model"] = model_json(m.base);
  j["urfather_map"] = Json::object();
  for (const auto& [n, v] : m.urfather_map) j["urfather_map"][n] = v;
  j["r_e"] = Json::array();
  for (auto [a, b] : m.r_e) j["r_e"].push_back({m.base.name(a), m.base.name(b)});
  const ClosureKind kind = m.variant == ModelVariant::K    ? ClosureKind::None
                           : m.variant == ModelVariant::PO ? ClosureKind::ReflexiveTransitive
                                                           : ClosureKind::Transitive;
  j["closure_kind"] = std::string(to_string(kind));
  return j;
}

Json certificate_json(const BulldozedModel& bm, std::optional<std::size_t> truncate_copies) {
  const KripkeModel& base = bm.base.base;
  Json j;
  j["variant"] = std::string(to_string(bm.variant));
  j["base"] = extraction_json(bm.base);
  j["w_minus"] = Json::array();
  for (WorldId w : bm.w_minus) j["w_minus"].push_back(base.name(w));
  j["clusters"] = Json::array();
  for (const auto& c : bm.clusters) {
    Json cj;
    cj["index"] = c.index;
    cj["members"] = Json::array();
    for (WorldId w : c.members) cj["members"].push_back(base.name(w));
    j["clusters"].push_back(cj);
  }
  if (truncate_copies) {
    j["truncation"]["copies"] = *truncate_copies;
    j["truncation"]["model"] = model_json(truncate(bm, *truncate_copies, Truncation::Prefix).model);
  }
  return j;
}

Json trace_json(const Tableau& t) {
  Json j;
  j["calculus"] = t.calculus().name;
  j["root"] = to_string(Formula::at(t.root_nominal(), t.root_payload()));
  j["nodes"] = Json::array();
  const auto& nodes = t.nodes();

  // Entries of an inner node live in every explored leaf below it.
  auto branch_below = [&](std::size_t k) -> const Branch* {
    std::vector<std::size_t> todo{k};
    while (!todo.empty()) {
      const std::size_t n = todo.back();
      todo.pop_back();
      if (nodes[n].branch) return nodes[n].branch.get();
      for (auto c = nodes[n].children.rbegin(); c != nodes[n].children.rend(); ++c) todo.push_back(*c);
    }
    return nullptr;
  };

  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& node = nodes[k];
    Json nj;
    nj["id"] = k;
    nj["status"] = node.children.empty() ? std::string(to_string(node.status)) : "split";
    nj["entries"] = Json::array();
    if (const Branch* b = branch_below(k)) {
      for (std::size_t e = node.begin; e < node.end && e < b->size(); ++e) {
        const auto& pf = (*b)[e];
        Json ej;
        ej["n"] = e + 1;
        ej["prefix"] = pf.prefix;
        ej["formula"] = to_string(pf.payload);
        ej["accessibility"] = pf.accessibility;
        ej["rule"] = std::string(rule_name(pf.origin.rule));
        ej["premises"] = Json::array();
        for (std::size_t p : pf.origin.premises) ej["premises"].push_back(p + 1);
        nj["entries"].push_back(ej);
      }
    }
    if (node.branch && node.branch->closure_witness()) {
      const auto [a, b] = *node.branch->closure_witness();
      nj["witness"] = {a + 1, b + 1};
    }
    nj["children"] = node.children;
    j["nodes"].push_back(nj);
  }
  return j;
}

}  // namespace hytab
