#include "hytab/kripke.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hytab/json.hpp"

namespace hytab {

std::string_view to_string(FrameClass c) {
  switch (c) {
    case FrameClass::All:
      return "All";
    case FrameClass::SPO:
      return "SPO";
    case FrameClass::USPO:
      return "USPO";
    case FrameClass::PO:
      return "PO";
  }
  return "?";
}

WorldId KripkeModel::add_world(std::string name) {
  if (name.empty()) throw ModelError("empty world name");
  if (find(name)) throw ModelError("duplicate world '" + name + "'");
  names_.push_back(std::move(name));
  succ_.emplace_back();
  for (auto& [p, bits] : props_) bits.push_back(false);
  return names_.size() - 1;
}

void KripkeModel::check(WorldId w) const {
  if (w >= names_.size()) throw ModelError("unknown world " + std::to_string(w));
}

void KripkeModel::add_edge(WorldId from, WorldId to) {
  check(from);
  check(to);
  auto& s = succ_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

void KripkeModel::set_prop(const std::string& p, WorldId w) {
  check(w);
  auto& bits = props_[p];
  bits.resize(names_.size(), false);
  bits[w] = true;
}

void KripkeModel::declare_prop(const std::string& p) { props_[p].resize(names_.size(), false); }

void KripkeModel::set_nominal(const Nominal& i, WorldId w) {
  check(w);
  noms_[i] = w;
}

const std::string& KripkeModel::name(WorldId w) const {
  check(w);
  return names_[w];
}

std::optional<WorldId> KripkeModel::find(std::string_view name) const {
  for (WorldId w = 0; w < names_.size(); ++w) {
    if (names_[w] == name) return w;
  }
  return std::nullopt;
}

WorldId KripkeModel::at(std::string_view name) const {
  if (auto w = find(name)) return *w;
  throw ModelError("unknown world '" + std::string(name) + "'");
}

bool KripkeModel::related(WorldId from, WorldId to) const {
  check(from);
  return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

const std::vector<WorldId>& KripkeModel::successors(WorldId w) const {
  check(w);
  return succ_[w];
}

std::vector<std::pair<WorldId, WorldId>> KripkeModel::edges() const {
  std::vector<std::pair<WorldId, WorldId>> out;
  for (WorldId w = 0; w < succ_.size(); ++w) {
    for (WorldId v : succ_[w]) out.emplace_back(w, v);
  }
  return out;
}

std::size_t KripkeModel::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

bool KripkeModel::holds(const std::string& p, WorldId w) const {
  check(w);
  auto it = props_.find(p);
  return it != props_.end() && it->second[w];
}

std::optional<WorldId> KripkeModel::denotation(const Nominal& i) const {
  auto it = noms_.find(i);
  if (it == noms_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

std::vector<bool> truth_set(const KripkeModel& m, const Formula& f) {
  const std::size_t n = m.size();
  auto nominal_world = [&](const Nominal& i) {
    auto w = m.denotation(i);
    if (!w) throw ModelError("nominal '" + i + "' is not interpreted");
    return *w;
  };
  switch (f.kind()) {
    case Kind::Prop: {
      std::vector<bool> out(n);
      for (WorldId w = 0; w < n; ++w) out[w] = m.holds(f.name(), w);
      return out;
    }
    case Kind::Nom: {
      std::vector<bool> out(n, false);
      out[nominal_world(f.name())] = true;
      return out;
    }
    case Kind::Neg: {
      auto out = truth_set(m, f.child());
      out.flip();
      return out;
    }
    case Kind::And:
    case Kind::Or: {
      auto a = truth_set(m, f.lhs());
      auto b = truth_set(m, f.rhs());
      for (WorldId w = 0; w < n; ++w) a[w] = f.kind() == Kind::And ? (a[w] && b[w]) : (a[w] || b[w]);
      return a;
    }
    case Kind::Dia:
    case Kind::Box: {
      auto sub = truth_set(m, f.child());
      const bool dia = f.kind() == Kind::Dia;
      std::vector<bool> out(n);
      for (WorldId w = 0; w < n; ++w) {
        const auto& s = m.successors(w);
        out[w] = dia ? std::any_of(s.begin(), s.end(), [&](WorldId v) { return sub[v]; })
                     : std::all_of(s.begin(), s.end(), [&](WorldId v) { return sub[v]; });
      }
      return out;
    }
    case Kind::At: {
      const WorldId target = nominal_world(f.name());
      const bool value = truth_set(m, f.child())[target];
      return std::vector<bool>(n, value);
    }
  }
  throw std::logic_error("unknown formula kind");
}

bool eval(const KripkeModel& m, WorldId w, const Formula& f) {
  if (w >= m.size()) throw ModelError("unknown world " + std::to_string(w));
  return truth_set(m, f)[w];
}

// ---------------------------------------------------------------------------

bool ClassReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* ClassReport::failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

std::string ClassReport::summary() const {
  std::ostringstream os;
  os << to_string(frame_class) << ':';
  for (const auto& c : checks) {
    os << ' ' << c.property << '=' << (c.passed ? "ok" : "FAIL");
    if (!c.passed) {
      os << '(';
      for (std::size_t k = 0; k < c.witness.size(); ++k) os << (k ? "," : "") << c.witness[k];
      os << ')';
    }
  }
  return os.str();
}

std::vector<std::string> required_properties(FrameClass c) {
  switch (c) {
    case FrameClass::All:
      return {};
    case FrameClass::SPO:
      return {"irreflexive", "transitive"};
    case FrameClass::USPO:
      return {"serial", "irreflexive", "transitive"};
    case FrameClass::PO:
      return {"reflexive", "anti-symmetric", "transitive"};
  }
  return {};
}

PropertyCheck check_property(const KripkeModel& m, std::string_view property) {
  PropertyCheck out{std::string(property), true, {}};
  const std::size_t n = m.size();
  auto fail = [&](std::initializer_list<WorldId> ws) {
    out.passed = false;
    for (WorldId w : ws) out.witness.push_back(m.name(w));
  };
  if (property == "serial") {
    for (WorldId x = 0; x < n && out.passed; ++x) {
      if (m.successors(x).empty()) fail({x});
    }
  } else if (property == "reflexive") {
    for (WorldId x = 0; x < n && out.passed; ++x) {
      if (!m.related(x, x)) fail({x, x});
    }
  } else if (property == "irreflexive") {
    for (WorldId x = 0; x < n && out.passed; ++x) {
      if (m.related(x, x)) fail({x, x});
    }
  } else if (property == "anti-symmetric") {
    for (WorldId x = 0; x < n && out.passed; ++x) {
      for (WorldId y : m.successors(x)) {
        if (y != x && m.related(y, x)) {
          fail({x, y});
          break;
        }
      }
    }
  } else if (property == "transitive") {
    for (WorldId x = 0; x < n && out.passed; ++x) {
      for (WorldId y : m.successors(x)) {
        for (WorldId z : m.successors(y)) {
          if (!m.related(x, z)) {
            fail({x, y, z});
            break;
          }
        }
        if (!out.passed) break;
      }
    }
  } else {
    throw std::invalid_argument("unknown frame property '" + std::string(property) + "'");
  }
  return out;
}

ClassReport relation_class_check(const KripkeModel& m, FrameClass c) {
  ClassReport report{c, {}};
  for (const auto& p : required_properties(c)) report.checks.push_back(check_property(m, p));
  return report;
}

// ---------------------------------------------------------------------------

Json model_json(const KripkeModel& m) {
  Json j;
  j["worlds"] = Json::array();
  for (WorldId w = 0; w < m.size(); ++w) j["worlds"].push_back(m.name(w));
  j["rel"] = Json::array();
  for (auto [a, b] : m.edges()) j["rel"].push_back({m.name(a), m.name(b)});
  j["props"] = Json::object();
  for (const auto& [p, bits] : m.props()) {
    auto& arr = j["props"][p] = Json::array();
    for (WorldId w = 0; w < bits.size(); ++w) {
      if (bits[w]) arr.push_back(m.name(w));
    }
  }
  j["noms"] = Json::object();
  for (const auto& [i, w] : m.nominals()) j["noms"][i] = m.name(w);
  return j;
}

std::string model_to_json(const KripkeModel& m) { return model_json(m).dump(); }

KripkeModel model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ModelError("invalid model: " + what);
  };
  require(j.is_object(), "top level must be an object");
  require(j.contains("worlds") && j["worlds"].is_array() && !j["worlds"].empty(), "\"worlds\" must be a nonempty array");

  KripkeModel m;
  for (const auto& w : j["worlds"]) {
    require(w.is_string(), "world ids must be strings");
    m.add_world(w.get<std::string>());
  }
  auto world = [&](const nlohmann::json& v) {
    require(v.is_string(), "world references must be strings");
    auto w = m.find(v.get<std::string>());
    require(w.has_value(), "unknown world '" + v.get<std::string>() + "'");
    return *w;
  };
  if (j.contains("rel")) {
    require(j["rel"].is_array(), "\"rel\" must be an array");
    for (const auto& e : j["rel"]) {
      require(e.is_array() && e.size() == 2, "edges must be pairs");
      m.add_edge(world(e[0]), world(e[1]));
    }
  }
  if (j.contains("props")) {
    require(j["props"].is_object(), "\"props\" must be an object");
    for (const auto& [p, ws] : j["props"].items()) {
      require(ws.is_array(), "proposition extensions must be arrays");
      m.declare_prop(p);
      for (const auto& w : ws) m.set_prop(p, world(w));
    }
  }
  if (j.contains("noms")) {
    require(j["noms"].is_object(), "\"noms\" must be an object");
    for (const auto& [i, w] : j["noms"].items()) m.set_nominal(i, world(w));
  }
  return m;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string model_to_dot(const KripkeModel& m, const std::vector<WorldId>& highlighted) {
  std::ostringstream os;
  os << "digraph model {\n  rankdir=LR;\n";
  for (WorldId w = 0; w < m.size(); ++w) {
    std::string label = m.name(w);
    std::string facts;
    for (const auto& [p, bits] : m.props()) {
      if (bits[w]) facts += (facts.empty() ? "" : ",") + p;
    }
    for (const auto& [i, v] : m.nominals()) {
      if (v == w && i != m.name(w)) facts += (facts.empty() ? "" : ",") + i;
    }
    if (!facts.empty()) label += "\\n" + facts;
    const bool hl = std::find(highlighted.begin(), highlighted.end(), w) != highlighted.end();
    os << "  " << dot_quote(m.name(w)) << " [label=" << dot_quote(label)
       << (hl ? ", shape=doublecircle" : ", shape=circle") << "];\n";
  }
  for (auto [a, b] : m.edges()) os << "  " << dot_quote(m.name(a)) << " -> " << dot_quote(m.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hytab
