#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hytab/audit.hpp"
#include "hytab/bulldoze.hpp"
#include "hytab/extract.hpp"
#include "hytab/json.hpp"
#include "hytab/loopcheck.hpp"
#include "hytab/oracle.hpp"
#include "hytab/parser.hpp"
#include "hytab/tableau.hpp"
#include "hytab/trace.hpp"

namespace hytab::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CalculusSpec calculus_of(const RunConfig& cfg) {
  CalculusSpec cal;
  try {
    cal = CalculusSpec::by_name(cfg.calculus);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
  if (cfg.rules.empty()) return cal;
  if (!cfg.experimental) throw Usage("--rules needs --experimental");
  try {
    return cal.with_rules(cfg.rules);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.budget < 1) throw Usage("--budget must be at least 1");
  if (cfg.oracle && (*cfg.oracle < 1 || *cfg.oracle > 5)) throw Usage("--oracle takes 1 to 5 worlds");
  if (cfg.truncate && *cfg.truncate < 1) throw Usage("--truncate must be at least 1");
  if (cfg.jobs < 1) throw Usage("--jobs must be at least 1");
  const int inputs = cfg.formula.has_value() + cfg.file.has_value() + cfg.batch.has_value();
  if (inputs != 1) throw Usage("give exactly one of a formula, --file or --batch");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Usage("cannot write '" + path + "'");
  out << text;
}

std::string model_text(const KripkeModel& m, const std::string& indent) {
  std::ostringstream os;
  os << indent << "worlds:";
  for (WorldId w = 0; w < m.size(); ++w) os << ' ' << m.name(w);
  os << '\n' << indent << "relation:";
  for (auto [a, b] : m.edges()) os << ' ' << m.name(a) << "->" << m.name(b);
  os << '\n';
  for (const auto& [p, bits] : m.props()) {
    os << indent << "V(" << p << ") = {";
    bool first = true;
    for (WorldId w = 0; w < bits.size(); ++w) {
      if (!bits[w]) continue;
      os << (first ? "" : ", ") << m.name(w);
      first = false;
    }
    os << "}\n";
  }
  os << indent << "nominals:";
  for (const auto& [i, w] : m.nominals()) os << ' ' << i << '=' << m.name(w);
  return os.str() + "\n";
}

// Everything one decision produces.
struct Outcome {
  int code = kInternal;
  std::string text;
  Json json;
};

std::size_t default_copies(const Formula& f) { return std::max<std::size_t>(2, f.modal_depth() + 1); }

Outcome decide_one(const RunConfig& cfg, const CalculusSpec& cal, const std::string& source, bool batch) {
  Outcome o;
  const Notation notation = cfg.unicode ? Notation::Unicode : Notation::Ascii;
  ParseOptions popts;
  popts.nominals.insert(cfg.nominals.begin(), cfg.nominals.end());

  std::optional<Formula> parsed;
  try {
    parsed = parse(source, popts);
  } catch (const ParseError& e) {
    o.code = kUsage;
    o.json = {{"formula", source}, {"error", e.what()}, {"position", e.position()}};
    o.text = std::string("parse error: ") + e.what() + "\n";
    return o;
  }
  const Formula& f = *parsed;

  ExpandOptions eopts;
  eopts.budget = cfg.budget;
  eopts.seed = cfg.seed;
  const Decision d = decide(f, cal, eopts);

  std::ostringstream text;
  Json& j = o.json;
  j["formula"] = to_string(f, notation);
  j["calculus"] = cal.name;
  j["verdict"] = std::string(to_string(d.verdict));
  j["firings"] = d.tableau.total_firings();
  j["max_branch"] = d.tableau.max_branch_size();
  text << "formula: " << to_string(f, notation) << '\n';
  text << "calculus: " << (cal.experimental ? cal.describe() : cal.name) << '\n';
  text << "verdict: " << to_string(d.verdict) << '\n';
  text << "firings: " << d.tableau.total_firings() << '\n';

  std::vector<std::string> problems;

  if (!batch && cfg.proof) {
    text << '\n' << trace_text(d.tableau, notation);
    j["proof"] = trace_json(d.tableau);
  }

  if (!batch && cfg.dump_loopcheck) {
    const Branch* b = nullptr;
    if (d.open_leaf) b = &d.open_branch();
    for (std::size_t leaf : d.tableau.leaves()) {
      if (!b && d.tableau.nodes()[leaf].branch) b = d.tableau.nodes()[leaf].branch.get();
    }
    if (b) {
      const std::string dump = dump_loopcheck(*b, cal.tset);
      text << '\n' << dump;
      j["loopcheck"] = dump;
    }
  }

  switch (d.verdict) {
    case Verdict::Provable:
      o.code = kProvable;
      if (cfg.oracle) {
        const FrameClass c = cal.target;
        if (c == FrameClass::USPO) {
          j["oracle"] = "vacuous: no finite USPO frames";
        } else {
          try {
            if (auto cm = oracle_countermodel(f, c, *cfg.oracle)) {
              problems.push_back("oracle found a " + std::string(to_string(c)) + " countermodel:\n" +
                                 model_text(cm->model, "  ") + "  at " + cm->model.name(cm->world));
            }
            j["oracle"] = problems.empty() ? "agrees" : "disagrees";
          } catch (const BudgetError& e) {
            j["oracle"] = std::string("gave up: ") + e.what();
          }
        }
      }
      break;
    case Verdict::Budget:
      o.code = kBudget;
      break;
    case Verdict::NotProvable: {
      o.code = kNotProvable;
      const Branch& b = d.open_branch();
      try {
        const ExtractedModel m = extract(b, cal);
        const BulldozedModel bm = bulldoze(m);
        const AuditReport audit = audit_countermodel(b, cal, m, bm);
        j["certified"] = audit.passed();
        if (!audit.passed()) {
          if (cal.experimental) {
            j["warning"] = "countermodel not certified: " + audit.summary();
            text << "warning: countermodel not certified for an experimental calculus\n";
          } else {
            problems.push_back("countermodel self-check failed: " + audit.summary());
          }
        }
        const std::size_t copies = cfg.truncate.value_or(default_copies(b.root().payload));
        if (!batch && cfg.countermodel) {
          j["countermodel"] = certificate_json(bm, copies);
          text << "\ncountermodel (" << to_string(m.variant) << "), false at " << m.root_nominal << ":\n"
               << model_text(m.base, "  ");
          if (!bm.clusters.empty()) {
            text << "clusters, each replaced by an infinite forward chain of copies:\n";
            for (const auto& c : bm.clusters) {
              text << "  C" << c.index << " =";
              for (WorldId w : c.members) text << ' ' << m.base.name(w);
              text << '\n';
            }
            text << "truncation to " << copies << " copies:\n"
                 << model_text(truncate(bm, copies, Truncation::Prefix).model, "  ");
          }
        }
        if (!batch && cfg.certificate_path) write_file(*cfg.certificate_path, certificate_json(bm, copies).dump(2) + "\n");
        if (!batch && cfg.dot_path) write_file(*cfg.dot_path, bulldozed_to_dot(bm, copies));
      } catch (const PreconditionError& e) {
        problems.push_back(std::string("countermodel construction failed: ") + e.what());
      }
      break;
    }
  }

  if (!problems.empty()) {
    o.code = kInternal;
    j["problems"] = problems;
    for (const auto& p : problems) text << "error: " << p << '\n';
  }
  o.text = text.str();
  return o;
}

int run_batch(const RunConfig& cfg, const CalculusSpec& cal, std::ostream& out) {
  std::istringstream in(read_file(*cfg.batch));
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.emplace_back(n, line);
  }

  std::vector<Outcome> results(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < lines.size(); k = next++) {
      try {
        results[k] = decide_one(cfg, cal, lines[k].second, true);
      } catch (const std::exception& e) {
        results[k].code = kInternal;
        results[k].json = {{"formula", lines[k].second}, {"error", e.what()}};
      }
    }
  };
  const unsigned threads = std::min<unsigned>(cfg.jobs, std::max<std::size_t>(lines.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    Json record;
    record["line"] = lines[k].first;
    record.update(results[k].json);
    out << record.dump() << '\n';
    if (results[k].code == kUsage) code = std::max(code, kUsage);
    if (results[k].code == kInternal) code = kInternal;
  }
  return code;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    const CalculusSpec cal = calculus_of(cfg);
    if (cfg.batch) return run_batch(cfg, cal, out);

    const std::string source = cfg.formula ? *cfg.formula : read_file(*cfg.file);
    const Outcome o = decide_one(cfg, cal, source, false);
    if (o.code == kUsage) {
      err << o.text;
      return o.code;
    }
    if (cfg.format == Format::Json) {
      out << o.json.dump(2) << '\n';
    } else {
      out << o.text;
    }
    if (o.code == kInternal) err << "hytab: self-check failed, see output\n";
    return o.code;
  } catch (const Usage& e) {
    err << "hytab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "hytab: internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace hytab::cli
